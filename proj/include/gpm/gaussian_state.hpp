#pragma once

// Gaussian state model: covariance metric sigma, mean mu, validity reporting,
// the (restricted) complex structure J = -hbar * Omega * sigma, its symplectic
// spectrum, purity and the Wigner density.

#include <cstdint>
#include <vector>

#include "gpm/phase_space.hpp"

namespace gpm {

struct GaussianState {
    RealVector mean;        // 2N
    RealMatrix covariance;  // 2N x 2N symmetric; vacuum normalisation sigma = I
    SymplecticForm form;

    Eigen::Index n_modes() const { return form.n_modes; }
    Eigen::Index dim() const { return form.dim(); }
};

// Real linear map J on the complexified phase space.  J is diagonalizable with
// eigenvalues +/- i*nu_I, nu_I >= 1 for physical states; J^2 = -I iff pure.
struct ComplexStructure {
    RealMatrix map;  // 2N x 2N
    SymplecticForm form;

    Eigen::Index n_modes() const { return form.n_modes; }
    Eigen::Index dim() const { return form.dim(); }
};

struct SymplecticSpectrum {
    struct Pair {
        double nu = 0.0;     // J e = i*nu*e
        PhaseVector vector;  // normalized, <e, e> = 1, deterministic phase
    };
    std::vector<Pair> pairs;  // nu ascending

    std::vector<double> values() const;
};

struct ValidityReport {
    bool is_symmetric = false;
    bool is_positive_definite = false;
    double min_symplectic_eigenvalue = 0.0;
    bool is_physical = false;
    bool is_pure = false;
};

GaussianState vacuum_state(Eigen::Index n_modes);
GaussianState state_from_covariance(RealMatrix covariance);
GaussianState state_from_covariance(RealMatrix covariance, RealVector mean);

ComplexStructure complex_structure(const GaussianState& state);
ComplexStructure complex_structure_from_map(RealMatrix j);

// Inverts J -> sigma;  complex_structure(covariance_of(J)) reproduces J.
RealMatrix covariance_of(const ComplexStructure& j);

// Eigenpairs of J on the +i*nu branch, normalized per <e_I, e_J> = delta_IJ,
// ordered by ascending nu with a deterministic phase convention.
SymplecticSpectrum symplectic_spectrum(const ComplexStructure& j);

// prod_I 1/nu_I; equals 1 exactly when J^2 = -I.
double purity(const ComplexStructure& j);

bool is_pure(const ComplexStructure& j);

// Never throws on unphysical input: diagnosis is part of the contract.
ValidityReport validate_state(const GaussianState& state);

double wigner_density(const GaussianState& state, const RealVector& point);

// State with symplectic spectrum nu over the canonical annihilation basis.
GaussianState state_from_spectrum(const std::vector<double>& nu);

// Same, over a caller-supplied symplectically orthonormal eigenbasis
// {e_I} (conjugates implied).
GaussianState state_from_spectrum(const std::vector<double>& nu,
                                  const std::vector<PhaseVector>& basis);

// Same, over a random symplectic image of the canonical basis; every draw is
// a deterministic function of the seed.
GaussianState state_from_spectrum(const std::vector<double>& nu, std::uint64_t seed);

// Shared eigen-machinery for J-like maps; imposes no nu >= 1 constraint, so
// the partial-transpose path can reuse it.
SymplecticSpectrum eigen_spectrum(const RealMatrix& map, const SymplecticForm& form);

}  // namespace gpm
