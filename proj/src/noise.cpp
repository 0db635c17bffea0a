#include "eqsim/noise.hpp"

#include "eqsim/embedding.hpp"

#include <cmath>
#include <stdexcept>

namespace eqsim::noise {

WhiteNoiseModel::WhiteNoiseModel(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("white-noise epsilon must lie in [0, 1], got " + std::to_string(epsilon));
  }
}

DensityMatrix apply_white_noise(const DensityMatrix& rho_id, const WhiteNoiseModel& model) {
  const double eps = model.epsilon();
  const auto d = rho_id.matrix().rows();
  return {rho_id.n_qubits(), eps * rho_id.matrix() + (1.0 - eps) * CMatrix::Identity(d, d) / static_cast<double>(d)};
}

double expected_concurrence_embedded(const WhiteNoiseModel& model, double gt) {
  return model.epsilon() * std::abs(std::sin(2.0 * gt));
}

double embedded_concurrence(const DensityMatrix& rho) {
  if (rho.n_qubits() != 3) throw DimensionError("embedded_concurrence needs a 3-qubit simulator state");
  return concurrence_from_observables(expectation(rho, PauliString::parse("ZYY")),
                                      expectation(rho, PauliString::parse("XYY")));
}

Estimate estimate_from_counts(const PauliString& observable, std::span<const CountRecord> records) {
  double plus = 0.0;
  double minus = 0.0;
  for (const auto& r : records) {
    const int sign = eigenvalue_sign(r.setting, observable);
    if (sign == 0) {
      throw std::invalid_argument("setting " + r.setting.str() + " does not measure " + observable.str());
    }
    (sign > 0 ? plus : minus) += static_cast<double>(r.counts);
  }
  const double total = plus + minus;
  if (total == 0.0) return {0.0, 1.0};
  return {(plus - minus) / total, 2.0 * std::sqrt(plus * minus / (total * total * total))};
}

ObservableSample sample_observable(const DensityMatrix& rho, const PauliString& observable, std::uint64_t shots,
                                   std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  if (observable.size() != static_cast<std::size_t>(rho.n_qubits())) {
    throw DimensionError("observable size does not match the state");
  }
  Rng rng(seed);
  ObservableSample out;
  for (auto& [setting, sign] : eigenprojector_settings(observable)) {
    const double mean = static_cast<double>(shots) * setting.born_probability(rho);
    const std::uint64_t n = draw_poisson(mean, rng);
    out.records.push_back({std::move(setting), n, shots});
  }
  out.estimate = estimate_from_counts(observable, out.records);
  return out;
}

namespace {

Estimate delta_method(double z, double sz, double x, double sx) {
  const double c = std::hypot(z, x);
  if (c == 0.0) return {0.0, std::numeric_limits<double>::infinity()};
  return {c, std::sqrt(z * z * sz * sz + x * x * sx * sx) / c};
}

template <typename Draw>
double resampled_sigma(Draw&& draw, int n) {
  double sum = 0.0;
  double sum2 = 0.0;
  for (int k = 0; k < n; ++k) {
    const double c = draw();
    sum += c;
    sum2 += c * c;
  }
  const double mean = sum / n;
  return std::sqrt(std::max(0.0, (sum2 - n * mean * mean) / (n - 1)));
}

bool needs_fallback(const Estimate& e) { return !(e.value >= 3.0 * e.sigma); }

}  // namespace

Estimate concurrence_with_error(Estimate zyy, Estimate xyy, std::uint64_t seed) {
  Estimate out = delta_method(zyy.value, zyy.sigma, xyy.value, xyy.sigma);
  if (!needs_fallback(out)) return out;
  Rng rng(seed);
  std::normal_distribution<double> normal;
  out.sigma = resampled_sigma(
      [&] { return std::hypot(zyy.value + zyy.sigma * normal(rng), xyy.value + xyy.sigma * normal(rng)); },
      kFallbackResamples);
  return out;
}

namespace {

enum class Group { Zyy, Xyy, Other };

Group classify(const ProjectionSetting& s) {
  static const PauliString zyy = PauliString::parse("ZYY");
  static const PauliString xyy = PauliString::parse("XYY");
  if (eigenvalue_sign(s, zyy) != 0) return Group::Zyy;
  if (eigenvalue_sign(s, xyy) != 0) return Group::Xyy;
  return Group::Other;
}

}  // namespace

Estimate concurrence_from_counts(std::span<const CountRecord> records, std::uint64_t seed) {
  static const PauliString zyy = PauliString::parse("ZYY");
  static const PauliString xyy = PauliString::parse("XYY");
  std::vector<CountRecord> z_records;
  std::vector<CountRecord> x_records;
  for (const auto& r : records) {
    switch (classify(r.setting)) {
      case Group::Zyy: z_records.push_back(r); break;
      case Group::Xyy: x_records.push_back(r); break;
      case Group::Other:
        throw std::invalid_argument("setting " + r.setting.str() + " belongs to neither ZYY nor XYY");
    }
  }
  if (z_records.empty()) throw std::invalid_argument("missing ZYY count records");
  if (x_records.empty()) throw std::invalid_argument("missing XYY count records");

  const Estimate z = estimate_from_counts(zyy, z_records);
  const Estimate x = estimate_from_counts(xyy, x_records);
  Estimate out = delta_method(z.value, z.sigma, x.value, x.sigma);
  if (!needs_fallback(out)) return out;

  Rng rng(seed);
  std::vector<CountRecord> zr = z_records;
  std::vector<CountRecord> xr = x_records;
  out.sigma = resampled_sigma(
      [&] {
        for (std::size_t i = 0; i < zr.size(); ++i) zr[i].counts = draw_poisson(static_cast<double>(z_records[i].counts), rng);
        for (std::size_t i = 0; i < xr.size(); ++i) xr[i].counts = draw_poisson(static_cast<double>(x_records[i].counts), rng);
        return std::hypot(estimate_from_counts(zyy, zr).value, estimate_from_counts(xyy, xr).value);
      },
      kFallbackResamples);
  return out;
}

std::vector<double> outcome_fractions(std::span<const CountRecord> records) {
  double total = 0.0;
  for (const auto& r : records) total += static_cast<double>(r.counts);
  std::vector<double> out;
  for (const auto& r : records) out.push_back(total > 0.0 ? static_cast<double>(r.counts) / total : 0.0);
  return out;
}

LinearFit pump_model_fit(std::span<const std::pair<double, double>> points) {
  const auto n = static_cast<double>(points.size());
  if (points.size() < 2) throw std::invalid_argument("a linear fit needs at least two points");
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : points) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("degenerate abscissae: all pump values are equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (points.size() > 2) {
    double ssr = 0.0;
    for (const auto& [x, y] : points) ssr += std::pow(y - fit(x), 2);
    const double s2 = ssr / (n - 2.0);
    fit.slope_stderr = std::sqrt(s2 / sxx);
    fit.intercept_stderr = std::sqrt(s2 * (1.0 / n + mx * mx / sxx));
  }
  return fit;
}

std::vector<std::pair<double, double>> tomography_pump_points() {
  return {{5.0, 0.979}, {10.0, 0.959}, {30.0, 0.884}, {100.0, 0.694}};
}

std::vector<std::pair<double, double>> simulator_pump_points() { return {{10.0, 0.70}, {30.0, 0.57}, {100.0, 0.37}}; }

namespace {

double clamp_unit(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

double simulator_epsilon_for_pump(double pump_percent) {
  static const auto points = simulator_pump_points();
  static const LinearFit fit = pump_model_fit(points);
  return clamp_unit(fit(pump_percent));
}

double tomography_concurrence_for_pump(double pump_percent) {
  static const auto points = tomography_pump_points();
  static const LinearFit fit = pump_model_fit(points);
  return clamp_unit(fit(pump_percent));
}

double werner_epsilon_for_concurrence(double concurrence) {
  if (!(concurrence >= 0.0 && concurrence <= 1.0)) throw std::invalid_argument("concurrence must lie in [0, 1]");
  return (2.0 * concurrence + 1.0) / 3.0;
}

double werner_concurrence(double epsilon) { return std::max(0.0, (3.0 * epsilon - 1.0) / 2.0); }

RatePipeline::RatePipeline(std::vector<RateStage> stages) : stages_(std::move(stages)) {
  int rates = 0;
  for (const auto& s : stages_) {
    if (s.is_rate) {
      ++rates;
      if (!(s.value >= 0.0)) throw std::invalid_argument("rate stage '" + s.label + "' must be non-negative");
    } else if (!(s.value > 0.0 && s.value <= 1.0)) {
      throw std::invalid_argument("factor stage '" + s.label + "' must lie in (0, 1]");
    }
  }
  if (rates != 1) throw std::invalid_argument("a rate pipeline needs exactly one stage in Hz, got " + std::to_string(rates));
}

RatePipeline RatePipeline::two_photon(double pump_fraction) {
  return RatePipeline({{"two-photon source", 150e3 * pump_fraction, true},
                       {"setup transmission", 0.8, false},
                       {"CZ success", 1.0 / 9.0, false}});
}

RatePipeline RatePipeline::three_photon(double pump_fraction) {
  return RatePipeline({{"four-fold source", 500.0 * pump_fraction * pump_fraction, true},
                       {"setup transmission", 0.8, false},
                       {"two-CZ success", 1.0 / 27.0, false},
                       {"2 nm filter", 0.5, false},
                       {"2 nm filter", 0.5, false}});
}

double rate_pipeline_evaluate(const RatePipeline& pipeline) {
  double r = 1.0;
  for (const auto& s : pipeline.stages()) r *= s.value;
  return r;
}

}  // namespace eqsim::noise
