#pragma once

// Real embedding of an n-qubit pure state into n+1 qubits:
//   |Psi> = |0> (x) Re|psi> + |1> (x) Im|psi>
// with the ancilla as qubit 0. Complex conjugation of the simulated state
// becomes the physical gate sigma_z (x) I on the ancilla.

#include "eqsim/qstate.hpp"

namespace eqsim {

/// Real-valued state over n+1 qubits; the leading qubit is the ancilla.
class EmbeddedState {
 public:
  /// Throws InvariantError if any amplitude has an imaginary part above 1e-12.
  explicit EmbeddedState(StateVector inner);

  const StateVector& state() const { return inner_; }
  int simulated_qubits() const { return inner_.n_qubits() - 1; }

 private:
  StateVector inner_;
};

/// Hermitian matrix of the simulated system together with its coupling g.
class SimulatedHamiltonian {
 public:
  SimulatedHamiltonian(double g, CMatrix matrix);

  /// H = -g sigma_z (x) sigma_z.
  static SimulatedHamiltonian ising_zz(double g);

  double g() const { return g_; }
  const CMatrix& matrix() const { return matrix_; }
  int n_qubits() const { return qubits_for_dimension(static_cast<std::size_t>(matrix_.rows())); }

 private:
  double g_;
  CMatrix matrix_;
};

/// Generator of the simulator dynamics; purely imaginary, so exp(-i H t) is real.
class EmbeddedHamiltonian {
 public:
  explicit EmbeddedHamiltonian(CMatrix matrix);

  const CMatrix& matrix() const { return matrix_; }

 private:
  CMatrix matrix_;
};

EmbeddedState embed(const StateVector& psi);

/// |psi> = <0|Psi> + i <1|Psi>. Throws InvariantError if the decoded norm is off by > 1e-9.
StateVector decode(const EmbeddedState& psi);

/// sigma_z (x) I applied to the simulator state; an involution.
EmbeddedState apply_conjugation_gate(const EmbeddedState& psi);

/// decode(sigma_z (x) I |Psi>) == |psi*>.
StateVector conjugate_via_gate(const EmbeddedState& psi);

/// H^(E) = -sigma_y (x) Re H + i I_2 (x) Im H.
EmbeddedHamiltonian embed_hamiltonian(const SimulatedHamiltonian& h);

/// <psi| O K |psi> evaluated in the simulator as <Psi|(sigma_z - i sigma_x) (x) O|Psi>.
Complex antilinear_expectation(const StateVector& psi, const PauliString& observable);

/// |<ZYY> - i <XYY>| from the two real simulator expectation values.
double concurrence_from_observables(double zyy, double xyy);

/// Concurrence of the simulated two-qubit state from two simulator observables.
double concurrence_embedded(const EmbeddedState& psi);

/// |<psi| sigma_y (x) sigma_y |psi*>| for a two-qubit pure state.
double concurrence_pure(const StateVector& psi);

/// (|0>+|1>) (x) (|0>+|1>) / 2.
StateVector protocol_initial_state();

/// exp(-i H t) applied to the initial state for H = -g sigma_z (x) sigma_z, as a function of gt.
StateVector protocol_state(double gt);

/// exp(-i g t sigma_y (x) sigma_z (x) sigma_z) applied to embed(protocol_initial_state()).
EmbeddedState embedded_protocol_state(double gt);

}  // namespace eqsim
