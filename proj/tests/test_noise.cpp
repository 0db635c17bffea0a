#include "eqsim/circuits.hpp"
#include "eqsim/embedding.hpp"
#include "eqsim/noise.hpp"
#include "eqsim/random.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

using namespace eqsim;
using namespace eqsim::noise;
using std::numbers::pi;

namespace {

DensityMatrix ideal(double gt) { return DensityMatrix::from_pure(embedded_protocol_state(gt).state()); }

std::vector<CountRecord> both_observables(const DensityMatrix& rho, std::uint64_t shots, std::uint64_t seed) {
  auto records = sample_observable(rho, PauliString::parse("ZYY"), shots, seed).records;
  const auto x = sample_observable(rho, PauliString::parse("XYY"), shots, seed + 1000003).records;
  records.insert(records.end(), x.begin(), x.end());
  return records;
}

}  // namespace

TEST_SUITE("noise") {

TEST_CASE("apply_white_noise examples") {
  Rng rng(61);
  const DensityMatrix rho = random_density(2, rng);
  CHECK(oracle::max_abs(apply_white_noise(rho, WhiteNoiseModel(1.0)).matrix(), rho.matrix()) == 0.0);
  CHECK(oracle::max_abs(apply_white_noise(rho, WhiteNoiseModel(0.0)).matrix(), CMatrix::Identity(4, 4) / 4.0) == 0.0);
  const auto half = apply_white_noise(DensityMatrix::from_pure(StateVector::basis(2, 0)), WhiteNoiseModel(0.5));
  CMatrix want = CMatrix::Zero(4, 4);
  want.diagonal() << 0.625, 0.125, 0.125, 0.125;
  CHECK(oracle::max_abs(half.matrix(), want) == 0.0);
  CHECK_THROWS_AS(WhiteNoiseModel(1.2), std::invalid_argument);
  CHECK_THROWS_AS(WhiteNoiseModel(-0.1), std::invalid_argument);
}

TEST_CASE("white noise keeps trace and Hermiticity") {
  Rng rng(62);
  for (int k = 0; k < 100; ++k) {
    const auto out = apply_white_noise(random_density(3, rng), WhiteNoiseModel(k / 99.0));
    CHECK(std::abs(out.matrix().trace() - 1.0) < 1e-14);
    CHECK(oracle::max_abs(out.matrix(), out.matrix().adjoint()) == 0.0);
  }
}

TEST_CASE("expected_concurrence_embedded examples") {
  CHECK(expected_concurrence_embedded(WhiteNoiseModel(0.70), pi / 4) == doctest::Approx(0.70).epsilon(1e-15));
  CHECK(expected_concurrence_embedded(WhiteNoiseModel(0.57), pi / 4) == doctest::Approx(0.57).epsilon(1e-15));
  CHECK(expected_concurrence_embedded(WhiteNoiseModel(0.3), 0.0) == 0.0);
}

TEST_CASE("traceless-observable identity") {
  for (int e = 0; e <= 20; ++e) {
    const WhiteNoiseModel m(e / 20.0);
    for (int k = 0; k <= 50; ++k) {
      const double gt = pi * k / 50;
      const double c = embedded_concurrence(apply_white_noise(ideal(gt), m));
      CHECK(std::abs(c - expected_concurrence_embedded(m, gt)) < 1e-12);
    }
  }
}

TEST_CASE("sample_observable on an eigenstate") {
  // |0> (x) |r r> is a +1 eigenstate of ZYY
  const DensityMatrix rho = DensityMatrix::from_pure(StateVector::product("0rr"));
  const auto s = sample_observable(rho, PauliString::parse("ZYY"), 1000, 7);
  CHECK(s.records.size() == 8);
  CHECK(s.estimate.value == 1.0);
  CHECK(s.estimate.sigma == 0.0);
  for (const auto& r : s.records) {
    if (eigenvalue_sign(r.setting, PauliString::parse("ZYY")) < 0) CHECK(r.counts == 0);
  }
}

TEST_CASE("sample_observable examples") {
  const auto z = sample_observable(ideal(pi / 4), PauliString::parse("ZYY"), 100000, 3).estimate;
  CHECK(std::abs(z.value) < 5 * z.sigma);
  const auto x = sample_observable(ideal(pi / 8), PauliString::parse("XYY"), 1000000, 4).estimate;
  CHECK(std::abs(x.value + std::sin(pi / 4)) < 5 * x.sigma);
  CHECK_THROWS_AS(sample_observable(ideal(0.1), PauliString::parse("ZYY"), 0, 1), std::invalid_argument);
  const auto again = sample_observable(ideal(pi / 8), PauliString::parse("XYY"), 1000, 9);
  const auto same = sample_observable(ideal(pi / 8), PauliString::parse("XYY"), 1000, 9);
  CHECK(again.estimate.value == same.estimate.value);
}

TEST_CASE("estimate_from_counts against the hand formula") {
  std::vector<CountRecord> records;
  std::uint64_t plus = 0;
  std::uint64_t minus = 0;
  std::uint64_t c = 10;
  for (const auto& [s, sign] : eigenprojector_settings(PauliString::parse("XYY"))) {
    records.push_back({s, c, 1000});
    (sign > 0 ? plus : minus) += c;
    c += 7;
  }
  const double n = static_cast<double>(plus + minus);
  const auto e = estimate_from_counts(PauliString::parse("XYY"), records);
  CHECK(e.value == doctest::Approx((double(plus) - double(minus)) / n));
  CHECK(e.sigma == doctest::Approx(2 * std::sqrt(double(plus) * double(minus) / (n * n * n))));
  const std::vector<CountRecord> none;
  const auto empty = estimate_from_counts(PauliString::parse("XYY"), none);
  CHECK(empty.value == 0.0);
  CHECK(empty.sigma == 1.0);
}

TEST_CASE("concurrence_with_error delta method") {
  const auto c = concurrence_with_error({0.0, 0.01}, {0.70, 0.02});
  CHECK(c.value == doctest::Approx(0.70));
  CHECK(c.sigma == doctest::Approx(0.02));
  const auto d = concurrence_with_error({0.3, 0.01}, {0.4, 0.02});
  CHECK(d.value == doctest::Approx(0.5));
  CHECK(d.sigma == doctest::Approx(std::hypot(0.3 * 0.01, 0.4 * 0.02) / 0.5));
}

TEST_CASE("concurrence_with_error falls back near zero") {
  const auto c = concurrence_with_error({0.001, 0.01}, {0.0, 0.01}, 5);
  CHECK(c.sigma > 0.0);
  CHECK(c.sigma < 0.02);
  const auto again = concurrence_with_error({0.001, 0.01}, {0.0, 0.01}, 5);
  CHECK(again.sigma == c.sigma);
}

TEST_CASE("concurrence_from_counts examples") {
  // exact fractions at gt = pi/4
  const DensityMatrix rho = ideal(pi / 4);
  std::vector<CountRecord> records;
  for (const char* o : {"ZYY", "XYY"}) {
    for (const auto& [s, sign] : eigenprojector_settings(PauliString::parse(o))) {
      records.push_back({s, static_cast<std::uint64_t>(std::llround(1e6 * s.born_probability(rho))), 1000000});
    }
  }
  CHECK(concurrence_from_counts(records).value == doctest::Approx(1.0).epsilon(1e-12));

  for (auto& r : records) r.counts = 500;
  CHECK(concurrence_from_counts(records).value == 0.0);

  records.erase(records.begin() + 8, records.end());
  CHECK_THROWS_AS(concurrence_from_counts(records), std::invalid_argument);
  std::vector<CountRecord> stray{{ProjectionSetting::parse("hhh"), 1, 1}};
  CHECK_THROWS_AS(concurrence_from_counts(stray), std::invalid_argument);
}

TEST_CASE("sampled concurrence recovers the white-noise amplitudes") {
  for (double eps : {0.70, 0.57, 0.37}) {
    const auto rho = apply_white_noise(ideal(pi / 4), WhiteNoiseModel(eps));
    const auto c = concurrence_from_counts(both_observables(rho, 100000, 17), 18);
    CHECK(std::abs(c.value - eps) < 3 * c.sigma);
  }
}

TEST_CASE("delta-method sigma agrees with resampling") {
  for (double eps : {0.70, 0.57, 0.37}) {
    const auto rho = apply_white_noise(ideal(pi / 4), WhiteNoiseModel(eps));
    const std::uint64_t shots = 20000;
    const auto reported = concurrence_from_counts(both_observables(rho, shots, 100), 1);
    std::vector<double> values;
    for (std::uint64_t s = 0; s < 400; ++s) values.push_back(concurrence_from_counts(both_observables(rho, shots, 200 + s), 1).value);
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    const double spread = std::sqrt(var / (values.size() - 1));
    CHECK(std::abs(reported.sigma - spread) / spread < 0.15);
  }
}

TEST_CASE("one-sigma coverage over 200 seeds") {
  const auto rho = apply_white_noise(ideal(pi / 8), WhiteNoiseModel(0.57));
  const double truth = expectation(rho, PauliString::parse("XYY"));
  int inside = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto e = sample_observable(rho, PauliString::parse("XYY"), 10000, 1000 + s).estimate;
    if (std::abs(e.value - truth) <= e.sigma) ++inside;
  }
  const double fraction = inside / 200.0;
  CHECK(fraction >= 0.61);
  CHECK(fraction <= 0.75);
}

TEST_CASE("outcome fractions") {
  const auto s = sample_observable(ideal(pi / 8), PauliString::parse("XYY"), 10000, 2);
  const auto f = outcome_fractions(s.records);
  CHECK(f.size() == 8);
  CHECK(std::accumulate(f.begin(), f.end(), 0.0) == doctest::Approx(1.0));
}

TEST_CASE("pump fits") {
  const auto qst = pump_model_fit(tomography_pump_points());
  CHECK(std::abs(qst.slope - (-0.0030)) <= 0.0001);
  const auto eqs = pump_model_fit(simulator_pump_points());
  CHECK(std::abs(eqs.slope - (-0.0035)) <= 0.0007);
  // independent normal-equation evaluation
  for (const auto& pts : {tomography_pump_points(), simulator_pump_points()}) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(pts.size());
    for (auto [x, y] : pts) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(pump_model_fit(pts).slope == doctest::Approx(slope).epsilon(1e-12));
    CHECK(pump_model_fit(pts).intercept == doctest::Approx((sy - slope * sx) / n).epsilon(1e-12));
  }
  const std::vector<std::pair<double, double>> flat{{1, 0.5}, {3, 0.5}};
  CHECK(pump_model_fit(flat).slope == 0.0);
  const std::vector<std::pair<double, double>> one{{1, 0.5}};
  CHECK_THROWS_AS(pump_model_fit(one), std::invalid_argument);
  const std::vector<std::pair<double, double>> same_x{{2, 0.5}, {2, 0.7}};
  CHECK_THROWS_AS(pump_model_fit(same_x), std::invalid_argument);
}

TEST_CASE("pump mappings stay in range") {
  for (double p : {1.0, 10.0, 50.0, 100.0}) {
    CHECK(simulator_epsilon_for_pump(p) >= 0.0);
    CHECK(simulator_epsilon_for_pump(p) <= 1.0);
    CHECK(tomography_concurrence_for_pump(p) <= 1.0);
  }
  CHECK(simulator_epsilon_for_pump(10) > simulator_epsilon_for_pump(100));
}

TEST_CASE("Werner helpers invert each other") {
  for (double c : {0.0, 0.3, 0.694, 0.979, 1.0}) {
    CHECK(werner_concurrence(werner_epsilon_for_concurrence(c)) == doctest::Approx(c).epsilon(1e-14));
  }
  CHECK(werner_concurrence(0.2) == 0.0);
}

TEST_CASE("rate pipelines") {
  const double two = rate_pipeline_evaluate(RatePipeline::two_photon());
  CHECK(two == doctest::Approx(150000 * 0.8 / 9).epsilon(1e-14));
  CHECK(std::abs(two - 13000) / 13000 < 0.05);
  CHECK(rate_pipeline_evaluate(RatePipeline({{"source", 500.0, true}})) == 500.0);
  CHECK(rate_pipeline_evaluate(RatePipeline({{"source", 1.0, true}})) == 1.0);
  CHECK(rate_pipeline_evaluate(RatePipeline::three_photon()) == doctest::Approx(500 * 0.8 / 27 * 0.25));
  CHECK(rate_pipeline_evaluate(RatePipeline::three_photon(0.1)) ==
        doctest::Approx(0.01 * rate_pipeline_evaluate(RatePipeline::three_photon())));
  CHECK_THROWS_AS(RatePipeline({{"a", 0.5, false}}), std::invalid_argument);
  CHECK_THROWS_AS(RatePipeline({{"a", 1.0, true}, {"b", 2.0, true}}), std::invalid_argument);
  CHECK_THROWS_AS(RatePipeline({{"a", 1.0, true}, {"f", 1.5, false}}), std::invalid_argument);
  CHECK_THROWS_AS(RatePipeline({{"a", 1.0, true}, {"f", 0.0, false}}), std::invalid_argument);
}

}
