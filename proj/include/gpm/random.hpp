#pragma once

// Seeded generators for states, subspaces and symplectic maps.  Every draw is
// a pure function of the generator state, so sweeps parallelized per seed stay
// reproducible.

#include <random>

#include "gpm/gaussian_state.hpp"
#include "gpm/subsystems.hpp"

namespace gpm {

using Rng = std::mt19937_64;

RealMatrix random_symmetric(Eigen::Index dim, Rng& rng, double scale);

// exp(Omega * A) with A random symmetric; exactly symplectic up to rounding.
RealMatrix random_symplectic(Eigen::Index n_modes, Rng& rng, double scale = 0.5);

// Covariance S^T diag(nu_1, nu_1, ..., nu_N, nu_N) S with nu_I ~ U[nu_min, nu_max].
GaussianState random_physical_state(Eigen::Index n_modes, Rng& rng, double nu_min = 1.0,
                                    double nu_max = 3.0);

GaussianState random_pure_state(Eigen::Index n_modes, Rng& rng);

PhaseVector random_phase_vector(Eigen::Index n_modes, Rng& rng);

// Random symplectic subspace with the requested number of modes.
ModeSubspace random_subspace(Eigen::Index ambient_modes, Eigen::Index modes, Rng& rng);

}  // namespace gpm
