#pragma once

// Imperfection and counting-statistics models for the simulator experiment.

#include "eqsim/counts.hpp"
#include "eqsim/qstate.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace eqsim::noise {

/// rho_exp = eps rho_id + (1 - eps) I / 2^n.
class WhiteNoiseModel {
 public:
  explicit WhiteNoiseModel(double epsilon);
  double epsilon() const { return epsilon_; }

 private:
  double epsilon_;
};

DensityMatrix apply_white_noise(const DensityMatrix& rho_id, const WhiteNoiseModel& model);

/// eps |sin 2gt|.
double expected_concurrence_embedded(const WhiteNoiseModel& model, double gt);

/// |<ZYY> - i <XYY>| from exact expectations of a 3-qubit simulator density matrix.
double embedded_concurrence(const DensityMatrix& rho);

struct Estimate {
  double value = 0.0;
  double sigma = 0.0;
};

struct ObservableSample {
  std::vector<CountRecord> records;  // one per eigenprojector setting
  Estimate estimate;
};

/// (N+ - N-)/(N+ + N-) with sigma = 2 sqrt(N+ N- / (N+ + N-)^3). An empty
/// record set (no counts) returns the uninformative {0, 1}.
Estimate estimate_from_counts(const PauliString& observable, std::span<const CountRecord> records);

/// Poisson counts with mean shots * Born probability on each of the 2^n eigenprojector settings.
ObservableSample sample_observable(const DensityMatrix& rho, const PauliString& observable, std::uint64_t shots,
                                   std::uint64_t seed);

inline constexpr int kFallbackResamples = 4000;

/// First-order propagation through sqrt(z^2 + x^2); when value < 3 sigma the
/// modulus is not differentiable enough and a Gaussian Monte-Carlo fallback is used.
Estimate concurrence_with_error(Estimate zyy, Estimate xyy, std::uint64_t seed = 0);

/// Concurrence from the count records of both ZYY ({h,v}{r,l}{r,l}) and XYY
/// ({d,a}{r,l}{r,l}) settings. Throws std::invalid_argument if either is missing.
/// The fallback near zero resamples every count as Poisson(observed).
Estimate concurrence_from_counts(std::span<const CountRecord> records, std::uint64_t seed = 0);

/// Normalized counts of each record (the measured "fractions").
std::vector<double> outcome_fractions(std::span<const CountRecord> records);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double intercept_stderr = 0.0;

  double operator()(double x) const { return intercept + slope * x; }
};

/// Ordinary least squares. Throws std::invalid_argument for fewer than two
/// points or identical abscissae.
LinearFit pump_model_fit(std::span<const std::pair<double, double>> points);

/// Measured (pump percent, maximum concurrence) points.
std::vector<std::pair<double, double>> tomography_pump_points();
std::vector<std::pair<double, double>> simulator_pump_points();

/// eps for the three-qubit simulator at a pump level, from the linear fit of its maxima.
double simulator_epsilon_for_pump(double pump_percent);
/// Maximum two-qubit tomography concurrence at a pump level, from the linear fit.
double tomography_concurrence_for_pump(double pump_percent);

/// eps' with max(0, (3 eps' - 1)/2) == concurrence, the white-noise weight of a Werner-type state.
double werner_epsilon_for_concurrence(double concurrence);
double werner_concurrence(double epsilon);

struct RateStage {
  std::string label;
  double value = 1.0;
  bool is_rate = false;  // Hz when true, dimensionless factor otherwise
};

class RatePipeline {
 public:
  /// Exactly one stage must be a rate; factors must lie in (0, 1].
  explicit RatePipeline(std::vector<RateStage> stages);

  const std::vector<RateStage>& stages() const { return stages_; }

  /// Source 150 kHz * pump fraction, 80% transmission, 1/9 single-gate success.
  static RatePipeline two_photon(double pump_fraction = 1.0);
  /// 500 Hz * pump fraction^2 four-fold source, 80% transmission, 1/27 two-gate success, two 50% filters.
  static RatePipeline three_photon(double pump_fraction = 1.0);

 private:
  std::vector<RateStage> stages_;
};

/// Product of all stages, in Hz.
double rate_pipeline_evaluate(const RatePipeline& pipeline);

}  // namespace eqsim::noise
