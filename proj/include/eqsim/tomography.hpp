#pragma once

// Two-qubit state tomography by linear inversion, and Wootters concurrence.

#include "eqsim/counts.hpp"
#include "eqsim/qstate.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace eqsim::tomography {

/// The 15 non-identity two-qubit Pauli strings, IX first, ZZ last.
const std::vector<PauliString>& two_qubit_observables();

class ExpectationSet {
 public:
  void set(const PauliString& p, double value);
  double at(const PauliString& p) const;
  bool contains(const PauliString& p) const { return values_.contains(p); }
  bool complete() const;
  std::size_t size() const { return values_.size(); }
  const std::map<PauliString, double>& values() const { return values_; }

 private:
  std::map<PauliString, double> values_;
};

ExpectationSet expectations_from_state(const DensityMatrix& rho);

struct Reconstruction {
  CMatrix matrix;  // Hermitian, unit trace
  double min_eigenvalue = 0.0;
  bool positive = true;  // min_eigenvalue >= -1e-10

  /// The matrix itself when positive, otherwise its nearest-PSD projection.
  DensityMatrix density() const;
};

/// rho = (I + sum_P <P> P) / 4. Throws std::invalid_argument on an incomplete set.
Reconstruction linear_inversion(const ExpectationSet& e);

/// Clips negative eigenvalues to zero and renormalizes the trace.
DensityMatrix project_to_psd(const CMatrix& hermitian);

/// max(0, l1 - l2 - l3 - l4), l_i decreasing square roots of the eigenvalues of rho rho~.
double concurrence_mixed(const DensityMatrix& rho);

/// All 36 pairs of the six eigenstate projectors.
std::vector<ProjectionSetting> overcomplete_settings();

/// Poisson counts with mean shots * Born probability for each of the 36 settings.
std::vector<CountRecord> simulate_tomography_counts(const DensityMatrix& rho, std::uint64_t shots_per_setting,
                                                    std::uint64_t seed);

/// Correlators from the 4 settings in their eigenbases, local terms from every
/// setting measuring that qubit in the right basis; each normalized by its summed counts.
ExpectationSet expectations_from_counts(std::span<const CountRecord> records);

struct ConcurrenceEstimate {
  double value = 0.0;
  double sigma = 0.0;
  bool projected = false;  // the linear inversion needed PSD projection
};

/// Concurrence of the reconstructed state, with a Monte-Carlo sigma from
/// resampling every count as Poisson(observed).
ConcurrenceEstimate concurrence_from_tomography(std::span<const CountRecord> records, int resamples,
                                                std::uint64_t seed);

double trace_distance(const CMatrix& a, const CMatrix& b);

/// Fits of a concurrence curve C(gt) measured on white-noised |sin 2gt| states.
struct CurveFit {
  double werner_epsilon = 1.0;   // eps' minimizing sum (C_k - max(0, eps'|sin 2gt_k| - (1 - eps')/2))^2
  double amplitude = 1.0;        // max(0, (3 eps' - 1)/2), the fitted maximum concurrence
  double proportional_amplitude = 1.0;  // A minimizing sum (C_k - A |sin 2gt_k|)^2
  double rms_residual = 0.0;     // of the Werner-model fit
};

/// Throws std::invalid_argument on mismatched or empty input.
CurveFit fit_concurrence_curve(std::span<const double> gt, std::span<const double> concurrence);

}  // namespace eqsim::tomography
