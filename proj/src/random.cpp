#include "eqsim/random.hpp"

namespace eqsim {

namespace {

CMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal;
  CMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  }
  return g;
}

Eigen::Index dim_of(int n_qubits) { return static_cast<Eigen::Index>(std::size_t{1} << n_qubits); }

}  // namespace

StateVector random_state(int n_qubits, Rng& rng) {
  return StateVector::normalized(ginibre(dim_of(n_qubits), 1, rng).col(0));
}

StateVector random_real_state(int n_qubits, Rng& rng) {
  CVector v = ginibre(dim_of(n_qubits), 1, rng).col(0).real().cast<Complex>();
  return StateVector::normalized(v);
}

UnitaryMatrix random_unitary(int n_qubits, Rng& rng) {
  const Eigen::Index d = dim_of(n_qubits);
  Eigen::HouseholderQR<CMatrix> qr(ginibre(d, d, rng));
  CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phases of R's diagonal so the distribution is Haar.
  for (Eigen::Index k = 0; k < d; ++k) {
    const Complex rk = r(k, k);
    if (std::abs(rk) > 0.0) q.col(k) *= rk / std::abs(rk);
  }
  return UnitaryMatrix(std::move(q));
}

DensityMatrix random_density(int n_qubits, Rng& rng) {
  const Eigen::Index d = dim_of(n_qubits);
  const CMatrix g = ginibre(d, d, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (rho + rho.adjoint()) / 2.0;
  return {n_qubits, std::move(rho)};
}

CMatrix random_hermitian(int n_qubits, Rng& rng) {
  const Eigen::Index d = dim_of(n_qubits);
  const CMatrix g = ginibre(d, d, rng);
  return (g + g.adjoint()) / 2.0;
}

}  // namespace eqsim
