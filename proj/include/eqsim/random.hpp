#pragma once

// Haar-ish random states and operators for property checks and sweeps.

#include "eqsim/qstate.hpp"

#include <random>

namespace eqsim {

using Rng = std::mt19937_64;

/// Complex Gaussian amplitudes, normalized (Haar-distributed pure state).
StateVector random_state(int n_qubits, Rng& rng);

/// Real-amplitude normalized state.
StateVector random_real_state(int n_qubits, Rng& rng);

/// Haar unitary from the QR decomposition of a Ginibre matrix.
UnitaryMatrix random_unitary(int n_qubits, Rng& rng);

/// G G^dagger / Tr(G G^dagger) for Ginibre G (full rank almost surely).
DensityMatrix random_density(int n_qubits, Rng& rng);

/// (G + G^dagger) / 2 for Ginibre G.
CMatrix random_hermitian(int n_qubits, Rng& rng);

}  // namespace eqsim
