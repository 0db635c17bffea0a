#include "eqsim/qstate.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cctype>
#include <cmath>
#include <numbers>

namespace eqsim {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_dim(std::size_t got, std::size_t expected, const char* what) {
  if (got != expected) {
    throw DimensionError(std::string(what) + ": dimension " + std::to_string(got) +
                         " does not match " + std::to_string(expected));
  }
}

CVector single_qubit_ket(char label) {
  const double s = 1.0 / std::numbers::sqrt2;
  CVector v(2);
  switch (label) {
    case '0': case 'h': v << 1.0, 0.0; break;
    case '1': case 'v': v << 0.0, 1.0; break;
    case '+': case 'd': v << s, s; break;
    case '-': case 'a': v << s, -s; break;
    case 'r': v << s, kI * s; break;
    case 'l': v << s, -kI * s; break;
    default:
      throw std::invalid_argument(std::string("unknown single-qubit label '") + label + "'");
  }
  return v;
}

}  // namespace

int qubits_for_dimension(std::size_t dim) {
  if (dim == 0 || (dim & (dim - 1)) != 0) {
    throw DimensionError("dimension " + std::to_string(dim) + " is not a power of two");
  }
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return n;
}

// ---- PauliString ----------------------------------------------------------

PauliString::PauliString(std::vector<Pauli> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw std::invalid_argument("PauliString must have at least one label");
}

PauliString PauliString::parse(std::string_view text) {
  std::vector<Pauli> labels;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    switch (std::toupper(static_cast<unsigned char>(c))) {
      case 'I': labels.push_back(Pauli::I); break;
      case 'X': labels.push_back(Pauli::X); break;
      case 'Y': labels.push_back(Pauli::Y); break;
      case 'Z': labels.push_back(Pauli::Z); break;
      default:
        throw std::invalid_argument("invalid Pauli label '" + std::string(1, c) + "' in \"" +
                                    std::string(text) + "\"");
    }
  }
  return PauliString(std::move(labels));
}

bool PauliString::is_identity() const {
  for (Pauli p : labels_) {
    if (p != Pauli::I) return false;
  }
  return true;
}

std::string PauliString::str() const {
  std::string s;
  s.reserve(labels_.size());
  for (Pauli p : labels_) s.push_back(static_cast<char>(p));
  return s;
}

// ---- StateVector ----------------------------------------------------------

StateVector::StateVector(int n_qubits, CVector amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  if (n_qubits_ < 1) throw DimensionError("StateVector needs at least one qubit");
  require_dim(dim(), std::size_t{1} << n_qubits_, "StateVector");
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > tol::kConstruction) {
    throw InvariantError("StateVector is not normalized (|psi|^2 = " + std::to_string(norm2) + ")");
  }
}

StateVector StateVector::normalized(const CVector& amplitudes) {
  const double norm = amplitudes.norm();
  if (norm == 0.0) throw InvariantError("cannot normalize the zero vector");
  return {qubits_for_dimension(static_cast<std::size_t>(amplitudes.size())), amplitudes / norm};
}

StateVector StateVector::basis(int n_qubits, std::size_t index) {
  const std::size_t d = std::size_t{1} << n_qubits;
  if (index >= d) throw DimensionError("basis index out of range");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(d));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return {n_qubits, std::move(v)};
}

StateVector StateVector::product(std::string_view labels) {
  if (labels.empty()) throw DimensionError("product state needs at least one label");
  CVector v = single_qubit_ket(labels.front());
  for (char c : labels.substr(1)) v = tensor(v, single_qubit_ket(c));
  return StateVector::normalized(v);
}

// ---- DensityMatrix --------------------------------------------------------

DensityMatrix::DensityMatrix(int n_qubits, CMatrix matrix)
    : n_qubits_(n_qubits), matrix_(std::move(matrix)) {
  if (n_qubits_ < 1) throw DimensionError("DensityMatrix needs at least one qubit");
  const std::size_t d = std::size_t{1} << n_qubits_;
  require_dim(static_cast<std::size_t>(matrix_.rows()), d, "DensityMatrix rows");
  require_dim(static_cast<std::size_t>(matrix_.cols()), d, "DensityMatrix cols");
  if (!is_hermitian(matrix_)) throw InvariantError("DensityMatrix is not Hermitian");
  const Complex tr = matrix_.trace();
  if (std::abs(tr - 1.0) > tol::kConstruction) {
    throw InvariantError("DensityMatrix trace is " + std::to_string(tr.real()));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(matrix_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol::kPhysical) {
    throw InvariantError("DensityMatrix has a negative eigenvalue " +
                         std::to_string(es.eigenvalues().minCoeff()));
  }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  return {psi.n_qubits(), psi.amplitudes() * psi.amplitudes().adjoint()};
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
  return {n_qubits, CMatrix::Identity(d, d) / static_cast<double>(d)};
}

// ---- UnitaryMatrix --------------------------------------------------------

UnitaryMatrix::UnitaryMatrix(CMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw DimensionError("UnitaryMatrix must be square");
  n_qubits_ = qubits_for_dimension(static_cast<std::size_t>(matrix_.rows()));
  const CMatrix gram = matrix_.adjoint() * matrix_;
  const double dev = max_abs_diff(gram, CMatrix::Identity(matrix_.rows(), matrix_.cols()));
  if (dev > tol::kPhysical) {
    throw InvariantError("matrix is not unitary (max |U^dagger U - I| = " + std::to_string(dev) + ")");
  }
}

UnitaryMatrix UnitaryMatrix::identity(int n_qubits) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
  return UnitaryMatrix(CMatrix::Identity(d, d));
}

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix& rhs) const {
  require_dim(rhs.dim(), dim(), "UnitaryMatrix product");
  return UnitaryMatrix(matrix_ * rhs.matrix_);
}

// ---- tensor ---------------------------------------------------------------

CVector tensor(const CVector& a, const CVector& b) { return Eigen::kroneckerProduct(a, b).eval(); }

CMatrix tensor(const CMatrix& a, const CMatrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

StateVector tensor(const StateVector& a, const StateVector& b) {
  return {a.n_qubits() + b.n_qubits(), tensor(a.amplitudes(), b.amplitudes())};
}

UnitaryMatrix tensor(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  return UnitaryMatrix(tensor(a.matrix(), b.matrix()));
}

// ---- Pauli algebra --------------------------------------------------------

CMatrix single_pauli(Pauli p) {
  CMatrix m(2, 2);
  switch (p) {
    case Pauli::I: m << 1.0, 0.0, 0.0, 1.0; break;
    case Pauli::X: m << 0.0, 1.0, 1.0, 0.0; break;
    case Pauli::Y: m << 0.0, -kI, kI, 0.0; break;
    case Pauli::Z: m << 1.0, 0.0, 0.0, -1.0; break;
  }
  return m;
}

UnitaryMatrix pauli_matrix(const PauliString& p) {
  CMatrix m = single_pauli(p[0]);
  for (std::size_t i = 1; i < p.size(); ++i) m = tensor(m, single_pauli(p[i]));
  return UnitaryMatrix(std::move(m));
}

namespace {

double real_or_throw(Complex value) {
  if (std::abs(value.imag()) > tol::kPhysical) {
    throw InvariantError("expectation value has imaginary part " + std::to_string(value.imag()));
  }
  return value.real();
}

}  // namespace

double expectation(const StateVector& psi, const PauliString& p) {
  require_dim(p.size(), static_cast<std::size_t>(psi.n_qubits()), "expectation");
  const CVector& a = psi.amplitudes();
  return real_or_throw(a.dot(pauli_matrix(p).matrix() * a));
}

double expectation(const DensityMatrix& rho, const PauliString& p) {
  require_dim(p.size(), static_cast<std::size_t>(rho.n_qubits()), "expectation");
  return real_or_throw((rho.matrix() * pauli_matrix(p).matrix()).trace());
}

StateVector apply_unitary(const UnitaryMatrix& u, const StateVector& psi) {
  require_dim(psi.dim(), u.dim(), "apply_unitary");
  return {psi.n_qubits(), u.matrix() * psi.amplitudes()};
}

UnitaryMatrix pauli_exponential(const PauliString& direction, double angle) {
  const CMatrix p = pauli_matrix(direction).matrix();
  const auto d = p.rows();
  return UnitaryMatrix(std::cos(angle) * CMatrix::Identity(d, d) - kI * std::sin(angle) * p);
}

UnitaryMatrix hermitian_evolution(const CMatrix& hamiltonian, double t) {
  if (!is_hermitian(hamiltonian)) throw InvariantError("generator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hamiltonian);
  const CVector phases = (-kI * t * es.eigenvalues().cast<Complex>()).array().exp();
  return UnitaryMatrix(es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint());
}

bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tolerance) {
  if (a.dim() != b.dim()) return false;
  return std::abs(std::abs(a.amplitudes().dot(b.amplitudes())) - 1.0) <= tolerance;
}

double max_diff_up_to_phase(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) throw DimensionError("max_diff_up_to_phase: size mismatch");
  const Complex overlap = b.dot(a);
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex{1.0};
  return (a - phase * b).cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMatrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return max_abs_diff(m, m.adjoint()) <= tolerance;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shape mismatch");
  }
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace eqsim
