#include "gpm/random.hpp"

#include <algorithm>

#include <unsupported/Eigen/MatrixFunctions>

namespace gpm {

RealMatrix random_symmetric(Eigen::Index dim, Rng& rng, double scale) {
    std::normal_distribution<double> gauss(0.0, scale);
    RealMatrix a(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            a(i, j) = gauss(rng);
            a(j, i) = a(i, j);
        }
    }
    return a;
}

RealMatrix random_symplectic(Eigen::Index n_modes, Rng& rng, double scale) {
    const auto form = symplectic_form(n_modes);
    const RealMatrix generator = form.matrix * random_symmetric(form.dim(), rng, scale);
    return generator.exp();
}

GaussianState random_physical_state(Eigen::Index n_modes, Rng& rng, double nu_min,
                                    double nu_max) {
    std::uniform_real_distribution<double> unif(nu_min, nu_max);
    const auto form = symplectic_form(n_modes);
    RealVector d(form.dim());
    for (Eigen::Index k = 0; k < n_modes; ++k) {
        const double nu = unif(rng);
        d(2 * k) = nu;
        d(2 * k + 1) = nu;
    }
    const RealMatrix s = random_symplectic(n_modes, rng);
    RealMatrix sigma = s.transpose() * d.asDiagonal() * s;
    sigma = 0.5 * (sigma + sigma.transpose().eval());
    return state_from_covariance(std::move(sigma));
}

GaussianState random_pure_state(Eigen::Index n_modes, Rng& rng) {
    return random_physical_state(n_modes, rng, 1.0, 1.0);
}

PhaseVector random_phase_vector(Eigen::Index n_modes, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    PhaseVector v(2 * n_modes);
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        v(k) = Complex{gauss(rng), gauss(rng)};
    }
    return v;
}

ModeSubspace random_subspace(Eigen::Index ambient_modes, Eigen::Index modes, Rng& rng) {
    if (modes < 1 || modes > ambient_modes) {
        throw DimensionError("random_subspace: mode count out of range");
    }
    // Symplectic image of a random set of canonical modes.  This keeps the
    // draw exactly normalized and bounds its squeezing, so property sweeps
    // stay well conditioned; raw ill-conditioned input is exercised separately
    // through the orthonormalization guards.
    const RealMatrix s = random_symplectic(ambient_modes, rng, 0.35);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(ambient_modes));
    for (Eigen::Index k = 0; k < ambient_modes; ++k) order[static_cast<std::size_t>(k)] = k;
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<PhaseVector> basis;
    basis.reserve(static_cast<std::size_t>(2 * modes));
    for (Eigen::Index k = 0; k < modes; ++k) {
        basis.push_back(s.cast<Complex>() *
                        annihilation_vector(ambient_modes, order[static_cast<std::size_t>(k)]));
    }
    for (Eigen::Index k = 0; k < modes; ++k) {
        basis.push_back(basis[static_cast<std::size_t>(k)].conjugate());
    }
    return ModeSubspace::from_normalized(std::move(basis), ambient_modes,
                                         SubspaceKind::bosonic);
}

}  // namespace gpm
