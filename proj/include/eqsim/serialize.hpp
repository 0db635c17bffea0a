#pragma once

// JSON fixtures for states, matrices, circuits and optical networks.
//
//   state / matrix : {"n_qubits": n, "re": [...], "im": [...]}   (row-major)
//   circuit        : [{"gate": "CZ", "qubits": [0, 2], "angle": 0.0}, ...]
//   optics         : [{"kind": "PPBS1", "ports": [0, 1], "theta": 0.0}, ...]
//   fock map       : [{"occupations": {"0h": 1, ...}, "re": x, "im": y}, ...]

#include "eqsim/circuits.hpp"
#include "eqsim/optics.hpp"
#include "eqsim/qstate.hpp"

#include <json.hpp>

namespace eqsim::io {

using nlohmann::json;

json to_json(const CVector& v, int n_qubits);
json to_json(const CMatrix& m, int n_qubits);
json to_json(const StateVector& psi);
json to_json(const DensityMatrix& rho);
json to_json(const UnitaryMatrix& u);
json to_json(const Circuit& c);
json to_json(const optics::OpticalCircuit& c);
json to_json(const optics::FockAmplitudeMap& m);

CVector vector_from_json(const json& j);
CMatrix matrix_from_json(const json& j);
StateVector state_from_json(const json& j);
DensityMatrix density_from_json(const json& j);
UnitaryMatrix unitary_from_json(const json& j);
/// The register size is the largest referenced qubit + 1 unless n_qubits is given.
Circuit circuit_from_json(const json& j, int n_qubits = 0);
optics::OpticalCircuit optical_circuit_from_json(const json& j);
optics::FockAmplitudeMap fock_map_from_json(const json& j, int n_spatial);

}  // namespace eqsim::io
