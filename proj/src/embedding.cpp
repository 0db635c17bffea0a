#include "eqsim/embedding.hpp"

#include <cmath>
#include <string>

namespace eqsim {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kDecodeNormTolerance = 1e-9;

const PauliString& zyy() {
  static const PauliString p = PauliString::parse("ZYY");
  return p;
}

const PauliString& xyy() {
  static const PauliString p = PauliString::parse("XYY");
  return p;
}

CMatrix build_embedded_generator(const CMatrix& h) {
  const CMatrix re = h.real().cast<Complex>();
  const CMatrix im = h.imag().cast<Complex>();
  const CMatrix id2 = CMatrix::Identity(2, 2);
  return -tensor(single_pauli(Pauli::Y), re) + kI * tensor(id2, im);
}

// The worked case -g ZZ -> +g YZZ pins the sign convention of the map.
void check_sign_convention() {
  static const bool ok = [] {
    const double g = 0.731;
    const CMatrix got = build_embedded_generator(SimulatedHamiltonian::ising_zz(g).matrix());
    const CMatrix want = g * pauli_matrix(PauliString::parse("YZZ")).matrix();
    return max_abs_diff(got, want) < tol::kConstruction;
  }();
  if (!ok) throw InvariantError("embedded Hamiltonian sign convention check failed");
}

}  // namespace

EmbeddedState::EmbeddedState(StateVector inner) : inner_(std::move(inner)) {
  if (inner_.n_qubits() < 2) throw DimensionError("EmbeddedState needs an ancilla plus at least one qubit");
  const double max_imag = inner_.amplitudes().imag().cwiseAbs().maxCoeff();
  if (max_imag > tol::kConstruction) {
    throw InvariantError("EmbeddedState amplitudes must be real (max |Im| = " + std::to_string(max_imag) +
                         ")");
  }
}

SimulatedHamiltonian::SimulatedHamiltonian(double g, CMatrix matrix) : g_(g), matrix_(std::move(matrix)) {
  if (!is_hermitian(matrix_)) throw InvariantError("simulated Hamiltonian is not Hermitian");
  qubits_for_dimension(static_cast<std::size_t>(matrix_.rows()));
}

SimulatedHamiltonian SimulatedHamiltonian::ising_zz(double g) {
  return {g, -g * pauli_matrix(PauliString::parse("ZZ")).matrix()};
}

EmbeddedHamiltonian::EmbeddedHamiltonian(CMatrix matrix) : matrix_(std::move(matrix)) {
  if (!is_hermitian(matrix_)) throw InvariantError("embedded Hamiltonian is not Hermitian");
  if (matrix_.real().cwiseAbs().maxCoeff() > tol::kConstruction) {
    throw InvariantError("embedded Hamiltonian must be purely imaginary");
  }
}

EmbeddedState embed(const StateVector& psi) {
  const auto d = static_cast<Eigen::Index>(psi.dim());
  CVector out(2 * d);
  out.head(d) = psi.amplitudes().real().cast<Complex>();
  out.tail(d) = psi.amplitudes().imag().cast<Complex>();
  return EmbeddedState(StateVector(psi.n_qubits() + 1, std::move(out)));
}

StateVector decode(const EmbeddedState& psi) {
  const CVector& a = psi.state().amplitudes();
  const auto d = a.size() / 2;
  CVector out = a.head(d) + kI * a.tail(d);
  const double norm2 = out.squaredNorm();
  if (std::abs(norm2 - 1.0) > kDecodeNormTolerance) {
    throw InvariantError("decoded state has norm^2 " + std::to_string(norm2) +
                         "; input is outside the embedding image");
  }
  return StateVector::normalized(out);
}

EmbeddedState apply_conjugation_gate(const EmbeddedState& psi) {
  CVector a = psi.state().amplitudes();
  a.tail(a.size() / 2) *= -1.0;
  return EmbeddedState(StateVector(psi.state().n_qubits(), std::move(a)));
}

StateVector conjugate_via_gate(const EmbeddedState& psi) { return decode(apply_conjugation_gate(psi)); }

EmbeddedHamiltonian embed_hamiltonian(const SimulatedHamiltonian& h) {
  check_sign_convention();
  return EmbeddedHamiltonian(build_embedded_generator(h.matrix()));
}

Complex antilinear_expectation(const StateVector& psi, const PauliString& observable) {
  if (observable.size() != static_cast<std::size_t>(psi.n_qubits())) {
    throw DimensionError("antilinear_expectation: observable acts on " + std::to_string(observable.size()) +
                         " qubits, state has " + std::to_string(psi.n_qubits()));
  }
  const CMatrix ancilla = single_pauli(Pauli::Z) - kI * single_pauli(Pauli::X);
  const CVector big = embed(psi).state().amplitudes();
  const CMatrix op = tensor(ancilla, pauli_matrix(observable).matrix());
  return big.dot(op * big);
}

double concurrence_from_observables(double zyy_value, double xyy_value) {
  return std::abs(Complex(zyy_value, 0.0) - kI * xyy_value);
}

double concurrence_embedded(const EmbeddedState& psi) {
  if (psi.state().n_qubits() != 3) throw DimensionError("concurrence_embedded needs a 3-qubit simulator state");
  return concurrence_from_observables(expectation(psi.state(), zyy()), expectation(psi.state(), xyy()));
}

double concurrence_pure(const StateVector& psi) {
  if (psi.n_qubits() != 2) throw DimensionError("concurrence_pure needs a two-qubit state");
  const CVector& a = psi.amplitudes();
  const CMatrix yy = pauli_matrix(PauliString::parse("YY")).matrix();
  return std::abs(a.dot(yy * a.conjugate()));
}

StateVector protocol_initial_state() { return StateVector::product("++"); }

StateVector protocol_state(double gt) {
  // exp(-i(-g ZZ)t) = exp(-i(-gt) ZZ)
  return apply_unitary(pauli_exponential(PauliString::parse("ZZ"), -gt), protocol_initial_state());
}

EmbeddedState embedded_protocol_state(double gt) {
  const StateVector evolved =
      apply_unitary(pauli_exponential(PauliString::parse("YZZ"), gt), embed(protocol_initial_state()).state());
  // Round-off can leave ~1e-17 imaginary residue from the complex arithmetic.
  return EmbeddedState(StateVector::normalized(evolved.amplitudes().real().cast<Complex>()));
}

}  // namespace eqsim
