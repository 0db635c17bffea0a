#include "eqsim/verify.hpp"

#include "eqsim/circuits.hpp"
#include "eqsim/embedding.hpp"
#include "eqsim/noise.hpp"
#include "eqsim/random.hpp"
#include "eqsim/tomography.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace eqsim {

namespace {

using std::numbers::pi;

struct Outcome {
  bool passed;
  std::string detail;
};

Outcome within(double worst, double tolerance) {
  std::ostringstream os;
  os.precision(3);
  os << "max deviation " << std::scientific << worst << " (tolerance " << tolerance << ")";
  return {worst <= tolerance, os.str()};
}

CMatrix yzz_exponential_closed_form(double phi) {
  return std::cos(phi) * CMatrix::Identity(8, 8) -
         Complex(0.0, 1.0) * std::sin(phi) * pauli_matrix(PauliString::parse("YZZ")).matrix();
}

double grid_point(int k, int n, double hi) { return hi * k / (n - 1); }

Outcome circuit_identity() {
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double phi = grid_point(k, 200, 2.0 * pi);
    worst = std::max(worst, max_abs_diff(circuit_unitary(full_circuit(phi)).matrix(), yzz_exponential_closed_form(phi)));
  }
  return within(worst, 1e-12);
}

Outcome reduced_circuit_agreement(const VerifyOptions& o) {
  Rng rng(o.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
  double worst = 0.0;
  for (int k = 0; k < o.random_cases; ++k) {
    const double phi = angle(rng);
    const StateVector input = tensor(StateVector::basis(1, 0), random_state(2, rng));
    worst = std::max(worst, (run_circuit(full_circuit(phi), input).amplitudes() -
                             run_circuit(reduced_circuit(phi), input).amplitudes())
                                .cwiseAbs()
                                .maxCoeff());
  }
  return within(worst, 1e-12);
}

Outcome element_unitarity(const VerifyOptions& o) {
  double worst = 0.0;
  for (const auto& e : optics::build_eqs_optics(0.3, o.ppbs_sign)) {
    const auto t = e.transform();
    const auto n = t.matrix.rows();
    worst = std::max(worst, max_abs_diff(t.matrix.adjoint() * t.matrix, CMatrix::Identity(n, n)));
  }
  return within(worst, 1e-12);
}

Outcome sign_table(const VerifyOptions& o) {
  const auto net = optics::cz_pair_network(o.ppbs_sign);
  const CMatrix t = optics::postselected_transfer_matrix(net);
  const auto signs = optics::expected_cz_pair_signs();
  CMatrix expected = CMatrix::Zero(8, 8);
  for (int k = 0; k < 8; ++k) expected(k, k) = signs[static_cast<std::size_t>(k)] / (3.0 * std::sqrt(3.0));
  return within(max_abs_diff(t, expected), 1e-12);
}

Outcome success_probability(const VerifyOptions& o) {
  double worst = 0.0;
  for (double phi : {0.0, pi / 8.0, pi / 4.0, 1.0}) {
    for (std::size_t k = 0; k < 8; ++k) {
      const auto ps = optics::run_eqs_optics(phi, StateVector::basis(3, k), o.ppbs_sign);
      worst = std::max(worst, std::abs(ps.success_probability - 1.0 / 27.0));
    }
  }
  return within(worst, 1e-12);
}

Outcome optics_concurrence(const VerifyOptions& o) {
  double worst = 0.0;
  const StateVector input = embed(protocol_initial_state()).state();
  for (int k = 0; k < 41; ++k) {
    const double gt = grid_point(k, 41, pi);
    const auto ps = optics::run_eqs_optics(gt, input, o.ppbs_sign);
    if (!ps.state) return {false, "post-selection left no amplitude"};
    const DensityMatrix rho = DensityMatrix::from_pure(*ps.state);
    worst = std::max(worst, std::abs(noise::embedded_concurrence(rho) - std::abs(std::sin(2.0 * gt))));
  }
  return within(worst, 1e-10);
}

Outcome embedding_round_trip(const VerifyOptions& o) {
  Rng rng(o.seed + 1);
  double worst = 0.0;
  for (int k = 0; k < o.random_cases; ++k) {
    const StateVector psi = random_state(2, rng);
    const EmbeddedState big = embed(psi);
    worst = std::max(worst, (decode(big).amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff());
    worst = std::max(worst, (conjugate_via_gate(big).amplitudes() - psi.amplitudes().conjugate()).cwiseAbs().maxCoeff());
    worst = std::max(worst, (apply_conjugation_gate(apply_conjugation_gate(big)).state().amplitudes() -
                             big.state().amplitudes()).cwiseAbs().maxCoeff());
  }
  return within(worst, 1e-12);
}

Outcome two_observable_identity(const VerifyOptions& o) {
  Rng rng(o.seed + 2);
  double worst = 0.0;
  for (int k = 0; k < o.random_cases; ++k) {
    const StateVector psi = random_state(2, rng);
    worst = std::max(worst, std::abs(concurrence_embedded(embed(psi)) - concurrence_pure(psi)));
  }
  return within(worst, 1e-12);
}

Outcome embedded_dynamics(const VerifyOptions& o) {
  Rng rng(o.seed + 3);
  std::uniform_real_distribution<double> time(-3.0, 3.0);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const SimulatedHamiltonian h(1.0, random_hermitian(2, rng));
    const EmbeddedHamiltonian he = embed_hamiltonian(h);
    const StateVector psi = random_state(2, rng);
    const double t = time(rng);
    const CVector lhs = embed(apply_unitary(hermitian_evolution(h.matrix(), t), psi)).state().amplitudes();
    const CVector rhs = hermitian_evolution(he.matrix(), t).matrix() * embed(psi).state().amplitudes();
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return within(worst, 1e-10);
}

Outcome tomography_round_trip(const VerifyOptions& o) {
  Rng rng(o.seed + 4);
  double worst = 0.0;
  for (int k = 0; k < o.random_cases; ++k) {
    const DensityMatrix rho = random_density(2, rng);
    const auto rec = tomography::linear_inversion(tomography::expectations_from_state(rho));
    worst = std::max(worst, max_abs_diff(rec.matrix, rho.matrix()));
  }
  return within(worst, 1e-12);
}

Outcome white_noise_attenuation() {
  double worst = 0.0;
  for (double eps : {0.0, 0.37, 0.57, 0.70, 1.0}) {
    for (int k = 0; k < 33; ++k) {
      const double gt = grid_point(k, 33, pi);
      const DensityMatrix rho = noise::apply_white_noise(DensityMatrix::from_pure(embedded_protocol_state(gt).state()),
                                                         noise::WhiteNoiseModel(eps));
      worst = std::max(worst, std::abs(noise::embedded_concurrence(rho) -
                                       noise::expected_concurrence_embedded(noise::WhiteNoiseModel(eps), gt)));
    }
  }
  return within(worst, 1e-12);
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(const VerifyOptions& options) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
      {"circuit-identity", [] { return circuit_identity(); }},
      {"reduced-circuit", [&] { return reduced_circuit_agreement(options); }},
      {"optics-unitarity", [&] { return element_unitarity(options); }},
      {"sign-table", [&] { return sign_table(options); }},
      {"success-probability", [&] { return success_probability(options); }},
      {"optics-concurrence", [&] { return optics_concurrence(options); }},
      {"embedding-round-trip", [&] { return embedding_round_trip(options); }},
      {"two-observable-identity", [&] { return two_observable_identity(options); }},
      {"embedded-dynamics", [&] { return embedded_dynamics(options); }},
      {"tomography-round-trip", [&] { return tomography_round_trip(options); }},
      {"white-noise-attenuation", [] { return white_noise_attenuation(); }},
  };
  std::vector<CheckResult> results;
  for (const auto& [name, check] : checks) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r{name, false, "", 0.0};
    try {
      const Outcome o = check();
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace eqsim
