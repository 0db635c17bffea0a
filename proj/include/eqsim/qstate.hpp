#pragma once

// Dense state vectors, density matrices and Pauli algebra for few-qubit
// registers. Qubit 0 is the most significant (leftmost) tensor factor.

#include <Eigen/Dense>

#include <complex>
#include <compare>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eqsim {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

namespace tol {
/// Construction-time invariants (norm, trace, Hermiticity).
inline constexpr double kConstruction = 1e-12;
/// Positivity of density matrices, rejection of non-unitary input.
inline constexpr double kPhysical = 1e-10;
/// Phase-insensitive state comparison.
inline constexpr double kPhase = 1e-10;
}  // namespace tol

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Number of qubits n with 2^n == dim; throws DimensionError otherwise.
int qubits_for_dimension(std::size_t dim);

enum class Pauli : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

class PauliString {
 public:
  explicit PauliString(std::vector<Pauli> labels);

  /// Parses "XYY", "zyy", "I Z" (whitespace ignored).
  static PauliString parse(std::string_view text);

  std::size_t size() const { return labels_.size(); }
  Pauli operator[](std::size_t i) const { return labels_[i]; }
  std::span<const Pauli> labels() const { return labels_; }
  bool is_identity() const;
  std::string str() const;

  friend auto operator<=>(const PauliString&, const PauliString&) = default;

 private:
  std::vector<Pauli> labels_;
};

/// Normalized pure state over n qubits.
class StateVector {
 public:
  /// Throws if the length is not 2^n_qubits or the norm is off by more than 1e-12.
  StateVector(int n_qubits, CVector amplitudes);

  /// Rescales arbitrary non-zero amplitudes to unit norm.
  static StateVector normalized(const CVector& amplitudes);
  static StateVector basis(int n_qubits, std::size_t index);

  /// Product state from single-qubit labels: 0 1 + - h v d a r l.
  static StateVector product(std::string_view labels);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const CVector& amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

 private:
  int n_qubits_;
  CVector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite operator.
class DensityMatrix {
 public:
  DensityMatrix(int n_qubits, CMatrix matrix);

  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const CMatrix& matrix() const { return matrix_; }

 private:
  int n_qubits_;
  CMatrix matrix_;
};

class UnitaryMatrix {
 public:
  /// Throws InvariantError when U^dagger U deviates from I by more than 1e-10.
  explicit UnitaryMatrix(CMatrix matrix);

  static UnitaryMatrix identity(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const CMatrix& matrix() const { return matrix_; }

  UnitaryMatrix operator*(const UnitaryMatrix& rhs) const;

 private:
  int n_qubits_;
  CMatrix matrix_;
};

// Kronecker products; the left operand owns the most significant qubits.
CVector tensor(const CVector& a, const CVector& b);
CMatrix tensor(const CMatrix& a, const CMatrix& b);
StateVector tensor(const StateVector& a, const StateVector& b);
UnitaryMatrix tensor(const UnitaryMatrix& a, const UnitaryMatrix& b);

CMatrix single_pauli(Pauli p);
UnitaryMatrix pauli_matrix(const PauliString& p);

double expectation(const StateVector& psi, const PauliString& p);
double expectation(const DensityMatrix& rho, const PauliString& p);

StateVector apply_unitary(const UnitaryMatrix& u, const StateVector& psi);

/// exp(-i angle P) = cos(angle) I - i sin(angle) P, valid since P^2 = I.
UnitaryMatrix pauli_exponential(const PauliString& direction, double angle);

/// exp(-i H t) for Hermitian H via eigendecomposition.
UnitaryMatrix hermitian_evolution(const CMatrix& hamiltonian, double t);

/// |<a|b>| == 1 within tolerance.
bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tolerance = tol::kPhase);

/// max_k |a_k - e^{i phi} b_k| with phi chosen to align b onto a.
double max_diff_up_to_phase(const CVector& a, const CVector& b);

bool is_hermitian(const CMatrix& m, double tolerance = tol::kConstruction);
double max_abs_diff(const CMatrix& a, const CMatrix& b);

}  // namespace eqsim
