#pragma once

// Shared helpers for the test suites.

#include <cmath>
#include <initializer_list>
#include <utility>
#include <vector>

#include "gpm/gaussian_state.hpp"
#include "gpm/phase_space.hpp"
#include "gpm/subsystems.hpp"

namespace gpm::testing {

// Linear combination over the canonical annihilation basis; 1-based mode
// index, negative index for the conjugate member.
inline PhaseVector eigen_combo(Eigen::Index n_modes,
                               std::initializer_list<std::pair<int, Complex>> terms) {
    PhaseVector v = PhaseVector::Zero(2 * n_modes);
    for (const auto& [index, coeff] : terms) {
        PhaseVector e = annihilation_vector(n_modes, std::abs(index) - 1);
        if (index < 0) e = e.conjugate();
        v += coeff * e;
    }
    return v;
}

inline ModeSubspace span_of(Eigen::Index n_modes,
                            std::initializer_list<std::pair<int, Complex>> terms) {
    return ModeSubspace::from_vectors({eigen_combo(n_modes, terms)}, n_modes);
}

// Two-mode squeezed vacuum covariance, squeezing parameter r.
inline RealMatrix two_mode_squeezed_cov(double r) {
    const double c = std::cosh(2.0 * r);
    const double s = std::sinh(2.0 * r);
    RealMatrix sigma = RealMatrix::Zero(4, 4);
    sigma(0, 0) = sigma(1, 1) = sigma(2, 2) = sigma(3, 3) = c;
    sigma(0, 2) = sigma(2, 0) = s;
    sigma(1, 3) = sigma(3, 1) = -s;
    return sigma;
}

inline double frob(const RealMatrix& m) { return m.norm(); }

}  // namespace gpm::testing
