#pragma once

// Command-line front end. run() is the whole program minus process exit, so
// tests can drive it with in-memory streams.

#include "eqsim/tomography.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eqsim::cli {

enum ExitCode : int { kSuccess = 0, kInvalidConfig = 1, kInvariantFailure = 2 };

enum class Mode { Exact, Circuit, Optics, Tomography, Shots };

std::string mode_name(Mode mode);
Mode parse_mode(std::string_view text);

/// Invalid configuration; field() is the offending key as spelled on the command line.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct ExperimentConfig {
  Mode mode = Mode::Exact;
  std::vector<double> gt_grid;
  std::optional<double> epsilon;
  std::optional<double> pump_percent;
  std::uint64_t shots = 0;
  std::uint64_t seed = 1;
  std::string output_path;  // empty writes to stdout
  bool json = false;
  int jobs = 1;
};

/// Throws ConfigError.
void validate(const ExperimentConfig& cfg);

/// Comma-separated angles ("0, pi/8, 3*pi/4, 0.5") or a range "start:stop:count"
/// with both ends included. Throws ConfigError on field gt-grid.
std::vector<double> parse_grid(std::string_view text);

/// White-noise weight of the three-qubit simulator: --epsilon, the pump fit, or 1.
double simulator_epsilon(const ExperimentConfig& cfg);
/// White-noise weight eps' of the two-qubit tomography state: --epsilon, or the
/// Werner weight matching the pump fit's maximum concurrence, or 1.
double tomography_epsilon(const ExperimentConfig& cfg);

struct SweepRow {
  double gt = 0.0;
  double epsilon = 1.0;
  double c_exact = 0.0;     // from the exact ZYY/XYY values of the selected path
  double c_estimate = 0.0;  // shot-noise estimate, or c_exact without shots
  double c_sigma = 0.0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  double c_reference = 0.0;  // eps |sin 2gt|
};

/// One row per grid point, in grid order. Point k uses seed cfg.seed + k.
std::vector<SweepRow> concurrence_sweep(const ExperimentConfig& cfg);

struct TomographyRow {
  double gt = 0.0;
  double epsilon = 1.0;
  double c_exact = 0.0;
  double c_estimate = 0.0;
  double c_sigma = 0.0;
  bool projected = false;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  double c_reference = 0.0;  // max(0, eps'|sin 2gt| - (1 - eps')/2)
};

struct TomographyResult {
  std::vector<TomographyRow> rows;
  tomography::CurveFit fit;
};

inline constexpr int kTomographyResamples = 200;

TomographyResult tomography_run(const ExperimentConfig& cfg);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
void write_tomography_csv(std::ostream& os, const std::vector<TomographyRow>& rows);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eqsim::cli
