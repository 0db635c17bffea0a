#include "eqsim/tomography.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace eqsim::tomography {

const std::vector<PauliString>& two_qubit_observables() {
  static const std::vector<PauliString> list = [] {
    std::vector<PauliString> out;
    for (Pauli a : {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z}) {
      for (Pauli b : {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z}) {
        if (a == Pauli::I && b == Pauli::I) continue;
        out.emplace_back(std::vector<Pauli>{a, b});
      }
    }
    return out;
  }();
  return list;
}

void ExpectationSet::set(const PauliString& p, double value) {
  if (p.size() != 2 || p.is_identity()) throw std::invalid_argument("expectation sets hold non-identity 2-qubit strings");
  values_.insert_or_assign(p, value);
}

double ExpectationSet::at(const PauliString& p) const {
  auto it = values_.find(p);
  if (it == values_.end()) throw std::out_of_range("missing expectation for " + p.str());
  return it->second;
}

bool ExpectationSet::complete() const { return values_.size() == two_qubit_observables().size(); }

ExpectationSet expectations_from_state(const DensityMatrix& rho) {
  if (rho.n_qubits() != 2) throw DimensionError("tomography works on two-qubit states");
  ExpectationSet e;
  for (const auto& p : two_qubit_observables()) e.set(p, expectation(rho, p));
  return e;
}

DensityMatrix Reconstruction::density() const {
  if (positive) return {2, matrix};
  return project_to_psd(matrix);
}

Reconstruction linear_inversion(const ExpectationSet& e) {
  if (!e.complete()) {
    throw std::invalid_argument("linear inversion needs all 15 expectations, got " + std::to_string(e.size()));
  }
  CMatrix rho = CMatrix::Identity(4, 4);
  for (const auto& [p, value] : e.values()) rho += value * pauli_matrix(p).matrix();
  rho /= 4.0;
  rho = (rho + rho.adjoint()) / 2.0;
  Reconstruction r;
  r.min_eigenvalue = Eigen::SelfAdjointEigenSolver<CMatrix>(rho, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  r.positive = r.min_eigenvalue >= -tol::kPhysical;
  r.matrix = std::move(rho);
  return r;
}

DensityMatrix project_to_psd(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian);
  Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0);
  const double total = w.sum();
  if (total <= 0.0) throw InvariantError("matrix has no positive spectrum to project onto");
  w /= total;
  CMatrix rho = es.eigenvectors() * w.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  rho = (rho + rho.adjoint()) / 2.0;
  return {qubits_for_dimension(static_cast<std::size_t>(rho.rows())), std::move(rho)};
}

double concurrence_mixed(const DensityMatrix& rho) {
  if (rho.n_qubits() != 2) throw DimensionError("concurrence_mixed needs a two-qubit state");
  // With rho = Phi Phi^dagger, the lambdas are the singular values of Phi^T (YY) Phi.
  // This avoids square roots of round-off eigenvalues of rho rho~.
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix());
  Eigen::VectorXd p = es.eigenvalues();
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    p(i) = p(i) < 64 * std::numeric_limits<double>::epsilon() ? 0.0 : std::sqrt(p(i));
  }
  const CMatrix phi = es.eigenvectors() * p.cast<Complex>().asDiagonal();
  const CMatrix tau = phi.transpose() * pauli_matrix(PauliString::parse("YY")).matrix() * phi;
  const Eigen::VectorXd lambda = Eigen::JacobiSVD<CMatrix>(tau).singularValues();  // decreasing
  return std::max(0.0, lambda(0) - lambda(1) - lambda(2) - lambda(3));
}

std::vector<ProjectionSetting> overcomplete_settings() {
  static constexpr Projector kAll[] = {Projector::h, Projector::v, Projector::d,
                                       Projector::a, Projector::r, Projector::l};
  std::vector<ProjectionSetting> out;
  for (Projector a : kAll) {
    for (Projector b : kAll) out.emplace_back(std::vector<Projector>{a, b});
  }
  return out;
}

std::vector<CountRecord> simulate_tomography_counts(const DensityMatrix& rho, std::uint64_t shots_per_setting,
                                                    std::uint64_t seed) {
  if (rho.n_qubits() != 2) throw DimensionError("tomography works on two-qubit states");
  if (shots_per_setting == 0) throw std::invalid_argument("shots_per_setting must be positive");
  Rng rng(seed);
  std::vector<CountRecord> out;
  for (auto& setting : overcomplete_settings()) {
    const double mean = static_cast<double>(shots_per_setting) * setting.born_probability(rho);
    const std::uint64_t n = draw_poisson(mean, rng);
    out.push_back({std::move(setting), n, shots_per_setting});
  }
  return out;
}

ExpectationSet expectations_from_counts(std::span<const CountRecord> records) {
  ExpectationSet e;
  for (const auto& p : two_qubit_observables()) {
    double signed_sum = 0.0;
    double total = 0.0;
    for (const auto& r : records) {
      if (r.setting.size() != 2) throw DimensionError("tomography records must be two-qubit settings");
      // Identity factors accept any basis on that qubit, so reuse every setting
      // that measures the non-trivial factor in its eigenbasis.
      int sign = 1;
      bool usable = true;
      for (std::size_t q = 0; q < 2 && usable; ++q) {
        if (p[q] == Pauli::I) continue;
        const auto [plus_proj, minus_proj] = eigenbasis(p[q]);
        if (r.setting[q] == minus_proj) {
          sign = -sign;
        } else if (r.setting[q] != plus_proj) {
          usable = false;
        }
      }
      if (!usable) continue;
      signed_sum += sign * static_cast<double>(r.counts);
      total += static_cast<double>(r.counts);
    }
    e.set(p, total > 0.0 ? signed_sum / total : 0.0);
  }
  return e;
}

ConcurrenceEstimate concurrence_from_tomography(std::span<const CountRecord> records, int resamples,
                                                std::uint64_t seed) {
  const Reconstruction rec = linear_inversion(expectations_from_counts(records));
  ConcurrenceEstimate out;
  out.value = concurrence_mixed(rec.density());
  out.projected = !rec.positive;
  if (resamples < 2) return out;

  Rng rng(seed);
  std::vector<CountRecord> resampled(records.begin(), records.end());
  double sum = 0.0;
  double sum2 = 0.0;
  for (int k = 0; k < resamples; ++k) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      resampled[i].counts = draw_poisson(static_cast<double>(records[i].counts), rng);
    }
    const double c = concurrence_mixed(linear_inversion(expectations_from_counts(resampled)).density());
    sum += c;
    sum2 += c * c;
  }
  const double mean = sum / resamples;
  out.sigma = std::sqrt(std::max(0.0, (sum2 - resamples * mean * mean) / (resamples - 1)));
  return out;
}

double trace_distance(const CMatrix& a, const CMatrix& b) {
  const CMatrix diff = a - b;
  const CMatrix herm = (diff + diff.adjoint()) / 2.0;
  return 0.5 * Eigen::SelfAdjointEigenSolver<CMatrix>(herm, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().sum();
}

CurveFit fit_concurrence_curve(std::span<const double> gt, std::span<const double> concurrence) {
  if (gt.empty() || gt.size() != concurrence.size()) {
    throw std::invalid_argument("fit_concurrence_curve: need matching, non-empty gt and concurrence lists");
  }
  std::vector<double> s(gt.size());
  std::transform(gt.begin(), gt.end(), s.begin(), [](double x) { return std::abs(std::sin(2.0 * x)); });

  CurveFit fit;
  double ss = 0.0;
  double sc = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    ss += s[k] * s[k];
    sc += s[k] * concurrence[k];
  }
  fit.proportional_amplitude = ss > 0.0 ? sc / ss : 0.0;

  const auto cost = [&](double eps) {
    double sum = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      const double r = concurrence[k] - std::max(0.0, eps * s[k] - (1.0 - eps) / 2.0);
      sum += r * r;
    }
    return sum;
  };
  // the cost is flat below eps = 1/3, so bracket on a coarse grid before refining
  constexpr int kGrid = 200;
  int best = 0;
  for (int i = 1; i <= kGrid; ++i) {
    if (cost(double(i) / kGrid) < cost(double(best) / kGrid)) best = i;
  }
  const double lo = std::max(0.0, double(best - 1) / kGrid);
  const double hi = std::min(1.0, double(best + 1) / kGrid);
  const auto [eps, minimum] = boost::math::tools::brent_find_minima(cost, lo, hi, 52);
  fit.werner_epsilon = eps;
  fit.amplitude = std::max(0.0, (3.0 * eps - 1.0) / 2.0);
  fit.rms_residual = std::sqrt(minimum / static_cast<double>(s.size()));
  return fit;
}

}  // namespace eqsim::tomography
