#include "eqsim/circuits.hpp"

#include <cmath>

namespace eqsim {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_index(int q, int n_qubits) {
  if (q < 0 || q >= n_qubits) {
    throw DimensionError("qubit index " + std::to_string(q) + " outside register of " + std::to_string(n_qubits));
  }
}

CMatrix embed_single(const CMatrix& op, int qubit, int n_qubits) {
  CMatrix out = qubit == 0 ? op : CMatrix::Identity(2, 2);
  for (int q = 1; q < n_qubits; ++q) out = tensor(out, q == qubit ? op : CMatrix::Identity(2, 2));
  return out;
}

bool bit(std::size_t index, int qubit, int n_qubits) { return (index >> (n_qubits - 1 - qubit)) & 1U; }

}  // namespace

Gate Gate::cz(int control, int target) {
  if (control == target) throw DimensionError("CZ needs distinct qubits");
  return {Kind::CZ, control, target, 0.0};
}

Gate Gate::ry(int qubit, double angle) { return {Kind::RY, qubit, -1, angle}; }
Gate Gate::x(int qubit) { return {Kind::X, qubit, -1, 0.0}; }
Gate Gate::z(int qubit) { return {Kind::Z, qubit, -1, 0.0}; }

std::string Gate::name() const {
  switch (kind) {
    case Kind::CZ: return "CZ";
    case Kind::RY: return "RY";
    case Kind::X: return "X";
    case Kind::Z: return "Z";
  }
  return "?";
}

std::vector<int> Gate::qubits() const {
  if (kind == Kind::CZ) return {qubit, target};
  return {qubit};
}

Circuit::Circuit(int n_qubits, std::vector<Gate> gates) : n_qubits_(n_qubits), gates_(std::move(gates)) {
  if (n_qubits_ < 1) throw DimensionError("circuit needs at least one qubit");
  for (const Gate& g : gates_) {
    for (int q : g.qubits()) check_index(q, n_qubits_);
    if (g.kind == Gate::Kind::CZ && g.qubit == g.target) throw DimensionError("CZ needs distinct qubits");
  }
}

UnitaryMatrix gate_unitary(const Gate& gate, int n_qubits) {
  for (int q : gate.qubits()) check_index(q, n_qubits);
  switch (gate.kind) {
    case Gate::Kind::CZ: {
      const std::size_t d = std::size_t{1} << n_qubits;
      CVector diag(static_cast<Eigen::Index>(d));
      for (std::size_t i = 0; i < d; ++i) {
        diag(static_cast<Eigen::Index>(i)) =
            bit(i, gate.qubit, n_qubits) && bit(i, gate.target, n_qubits) ? -1.0 : 1.0;
      }
      return UnitaryMatrix(CMatrix(diag.asDiagonal()));
    }
    case Gate::Kind::RY: {
      const CMatrix ry = std::cos(gate.angle) * CMatrix::Identity(2, 2) -
                         kI * std::sin(gate.angle) * single_pauli(Pauli::Y);
      return UnitaryMatrix(embed_single(ry, gate.qubit, n_qubits));
    }
    case Gate::Kind::X:
      return UnitaryMatrix(embed_single(single_pauli(Pauli::X), gate.qubit, n_qubits));
    case Gate::Kind::Z:
      return UnitaryMatrix(embed_single(single_pauli(Pauli::Z), gate.qubit, n_qubits));
  }
  throw std::logic_error("unhandled gate kind");
}

UnitaryMatrix circuit_unitary(const Circuit& circuit) {
  CMatrix u = UnitaryMatrix::identity(circuit.n_qubits()).matrix();
  for (const Gate& g : circuit.gates()) u = gate_unitary(g, circuit.n_qubits()).matrix() * u;
  return UnitaryMatrix(std::move(u));
}

StateVector run_circuit(const Circuit& circuit, const StateVector& input) {
  if (input.n_qubits() != circuit.n_qubits()) throw DimensionError("run_circuit: register size mismatch");
  CVector v = input.amplitudes();
  for (const Gate& g : circuit.gates()) v = gate_unitary(g, circuit.n_qubits()).matrix() * v;
  return {input.n_qubits(), std::move(v)};
}

Circuit full_circuit(double phi) {
  return {3, {Gate::cz(0, 2), Gate::cz(0, 1), Gate::ry(0, phi), Gate::cz(0, 1), Gate::cz(0, 2)}};
}

Circuit reduced_circuit(double phi) { return {3, {Gate::ry(0, phi), Gate::cz(0, 1), Gate::cz(0, 2)}}; }

}  // namespace eqsim
