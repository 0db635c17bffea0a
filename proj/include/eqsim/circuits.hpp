#pragma once

// Gate-level form of the simulator evolution exp(-i phi sigma_y (x) sigma_z (x) sigma_z).
//
// Gate lists are stored in application order: gates.front() acts first. The
// operator product CZ02 CZ01 Ry0 CZ01 CZ02 therefore reads the same either way,
// but the reduced circuit Ry0 -> CZ01 -> CZ02 does not.

#include "eqsim/qstate.hpp"

#include <string>
#include <vector>

namespace eqsim {

struct Gate {
  enum class Kind { CZ, RY, X, Z };

  Kind kind;
  int qubit;        // control for CZ
  int target = -1;  // CZ only
  double angle = 0.0;  // RY only: Ry(angle) = exp(-i angle sigma_y)

  static Gate cz(int control, int target);
  static Gate ry(int qubit, double angle);
  static Gate x(int qubit);
  static Gate z(int qubit);

  std::string name() const;
  std::vector<int> qubits() const;

  friend bool operator==(const Gate&, const Gate&) = default;
};

class Circuit {
 public:
  /// Throws DimensionError if any gate index falls outside the register.
  Circuit(int n_qubits, std::vector<Gate> gates);

  int n_qubits() const { return n_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }

 private:
  int n_qubits_;
  std::vector<Gate> gates_;
};

UnitaryMatrix gate_unitary(const Gate& gate, int n_qubits);

/// Ordered product of gate unitaries, leftmost gate applied first.
UnitaryMatrix circuit_unitary(const Circuit& circuit);

StateVector run_circuit(const Circuit& circuit, const StateVector& input);

/// [CZ(0,2), CZ(0,1), RY(0,phi), CZ(0,1), CZ(0,2)]; composite equals exp(-i phi YZZ).
Circuit full_circuit(double phi);

/// [RY(0,phi), CZ(0,1), CZ(0,2)]; agrees with full_circuit on inputs with the ancilla in |0>.
Circuit reduced_circuit(double phi);

}  // namespace eqsim
