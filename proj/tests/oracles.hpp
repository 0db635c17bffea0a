#pragma once

// Reference implementations that share no code path with the library.

#include "eqsim/qstate.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <complex>
#include <numeric>
#include <vector>

namespace oracle {

using eqsim::CMatrix;
using eqsim::Complex;
using eqsim::CVector;

// exp(-i H t) by Pade scaling-and-squaring
inline CMatrix expm_evolution(const CMatrix& h, double t) {
  const CMatrix a = (Complex(0.0, -t) * h).eval();
  return a.exp();
}

inline CMatrix pauli2(char c) {
  CMatrix m(2, 2);
  const Complex i(0.0, 1.0);
  switch (c) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

// Kronecker product written out index by index.
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline CMatrix pauli_string(const std::string& s) {
  CMatrix m = pauli2(s[0]);
  for (std::size_t k = 1; k < s.size(); ++k) m = kron(m, pauli2(s[k]));
  return m;
}

// |0><0| (x) I + |1><1| (x) Z on the pair, identity elsewhere; qubit 0 leftmost.
inline CMatrix cz_from_projectors(int a, int b, int n) {
  CMatrix p0 = CMatrix::Zero(2, 2);
  CMatrix p1 = CMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  auto build = [&](const CMatrix& proj, const CMatrix& on_b) {
    CMatrix m = CMatrix::Identity(1, 1);
    for (int q = 0; q < n; ++q) m = kron(m, q == a ? proj : (q == b ? on_b : pauli2('I')));
    return m;
  };
  return build(p0, pauli2('I')) + build(p1, pauli2('Z'));
}

// Wootters concurrence from the non-Hermitian product rho (YY) rho* (YY).
inline double wootters_bruteforce(const CMatrix& rho) {
  const CMatrix yy = kron(pauli2('Y'), pauli2('Y'));
  const CMatrix r = rho * yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<CMatrix> es(r);
  std::vector<double> l;
  for (Eigen::Index k = 0; k < 4; ++k) l.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(k).real())));
  std::sort(l.rbegin(), l.rend());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

// Permanent by summing over all permutations.
inline Complex permanent(const CMatrix& m) {
  std::vector<int> perm(static_cast<std::size_t>(m.rows()));
  std::iota(perm.begin(), perm.end(), 0);
  Complex total = 0.0;
  do {
    Complex term = 1.0;
    for (std::size_t r = 0; r < perm.size(); ++r) term *= m(static_cast<Eigen::Index>(r), perm[r]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline double max_abs(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace oracle
