#include "gpm/phase_space.hpp"

#include <cmath>

namespace gpm {

namespace {
constexpr Complex kI{0.0, 1.0};
}

SymplecticForm symplectic_form(Eigen::Index n_modes) {
    if (n_modes < 1) {
        throw DimensionError("symplectic_form: n_modes must be >= 1");
    }
    RealMatrix m = RealMatrix::Zero(2 * n_modes, 2 * n_modes);
    for (Eigen::Index k = 0; k < n_modes; ++k) {
        m(2 * k, 2 * k + 1) = 1.0;
        m(2 * k + 1, 2 * k) = -1.0;
    }
    return SymplecticForm{n_modes, std::move(m)};
}

Complex symplectic_bilinear(const PhaseVector& u, const PhaseVector& v) {
    if (u.size() != v.size() || u.size() % 2 != 0) {
        throw DimensionError("symplectic_bilinear: phase vectors must share an even length");
    }
    Complex acc{0.0, 0.0};
    for (Eigen::Index k = 0; k < u.size(); k += 2) {
        acc += u(k + 1) * v(k) - u(k) * v(k + 1);
    }
    return acc;
}

Complex symplectic_product(const PhaseVector& u, const PhaseVector& v,
                           const SymplecticForm& form) {
    if (u.size() != form.dim() || v.size() != form.dim()) {
        throw DimensionError("symplectic_product: dimension mismatch with the symplectic form");
    }
    return -(kI / kHbar) * symplectic_bilinear(u.conjugate(), v);
}

PhaseVector conjugate(const PhaseVector& v) { return v.conjugate(); }

PhaseVector annihilation_vector(Eigen::Index n_modes, Eigen::Index mode) {
    if (n_modes < 1 || mode < 0 || mode >= n_modes) {
        throw DimensionError("annihilation_vector: mode index out of range");
    }
    const double s = 1.0 / std::sqrt(2.0);
    PhaseVector e = PhaseVector::Zero(2 * n_modes);
    e(2 * mode) = Complex{s, 0.0};
    e(2 * mode + 1) = Complex{0.0, -s};
    return e;
}

std::vector<PhaseVector> annihilation_basis(Eigen::Index n_modes) {
    if (n_modes < 1) {
        throw DimensionError("annihilation_basis: n_modes must be >= 1");
    }
    std::vector<PhaseVector> basis;
    basis.reserve(static_cast<std::size_t>(n_modes));
    for (Eigen::Index k = 0; k < n_modes; ++k) {
        basis.push_back(annihilation_vector(n_modes, k));
    }
    return basis;
}

Eigen::RowVectorXcd product_row(const PhaseVector& u, const SymplecticForm& form) {
    if (u.size() != form.dim()) {
        throw DimensionError("product_row: dimension mismatch with the symplectic form");
    }
    // <u, v> = i * conj(u)^T * Omega_block * v with the stored block form.
    return kI * (u.conjugate().transpose() * form.matrix.cast<Complex>());
}

}  // namespace gpm
