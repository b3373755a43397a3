#pragma once

// Partner construction for fermionic Gaussian pure states.  The roles of the
// metric and the symplectic form are interchanged relative to the bosonic
// case: the state supplies an antisymmetric two-form omega on a phase space
// carrying the fixed Euclidean metric g = I, the complex structure is
// J = -omega g^{-1}, and projectors are g-orthogonal.

#include <vector>

#include "gpm/phase_space.hpp"
#include "gpm/subsystems.hpp"

namespace gpm {

struct FermionicState {
    Eigen::Index n_modes = 0;
    RealMatrix omega;  // 2N x 2N antisymmetric, state-defined

    Eigen::Index dim() const { return 2 * n_modes; }
};

struct FermionicComplexStructure {
    RealMatrix map;  // J = -omega, satisfies J^2 = -I for pure states

    Eigen::Index dim() const { return map.rows(); }
    Eigen::Index n_modes() const { return map.rows() / 2; }
};

FermionicState fermionic_state(RealMatrix omega);

// Vacuum of decoupled modes: omega = the standard block form.
FermionicState fermionic_vacuum(Eigen::Index n_modes);

FermionicComplexStructure fermionic_complex_structure(const FermionicState& state);

// g-orthogonal projector onto a fermionic subspace (symmetric, idempotent).
RealMatrix fermionic_projector(const ModeSubspace& a);

// Partner of a correlated even-dimensional subsystem: the g-orthogonal
// projection of J Gamma_A onto the complement of A.  Empty when A is
// uncorrelated (J leaves Gamma_A invariant).
ModeSubspace fermionic_partner(const ModeSubspace& a, const FermionicComplexStructure& j);

}  // namespace gpm
