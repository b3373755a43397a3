#pragma once

// Primitives of the complexified classical phase space of N bosonic modes.
//
// Conventions used throughout the library:
//   * canonical (Darboux) ordering x1, p1, ..., xN, pN;
//   * hbar = 1;
//   * the symplectic two-form acts on phase vectors as
//       Omega(u, v) = sum_I (u_pI * v_xI - u_xI * v_pI),
//     whose matrix is the transpose of the stored block form;
//   * the complexified symplectic product is
//       <u, v> = -i * Omega(conj(u), v),
//     a Hermitian pseudo-inner product, conjugate-linear in the first slot.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "gpm/errors.hpp"

namespace gpm {

using Complex = std::complex<double>;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

// A point of the complexified phase space: 2N components in canonical ordering.
// Conjugation is componentwise in this basis.
using PhaseVector = Eigen::VectorXcd;

inline constexpr double kHbar = 1.0;

struct SymplecticForm {
    Eigen::Index n_modes = 0;
    RealMatrix matrix;  // 2N x 2N, N diagonal blocks [[0, 1], [-1, 0]]

    Eigen::Index dim() const { return 2 * n_modes; }
};

SymplecticForm symplectic_form(Eigen::Index n_modes);

// Omega(u, v) evaluated on (possibly complex) phase vectors, bilinear in both slots.
Complex symplectic_bilinear(const PhaseVector& u, const PhaseVector& v);

// <u, v> = -(i/hbar) Omega(conj(u), v).
Complex symplectic_product(const PhaseVector& u, const PhaseVector& v,
                           const SymplecticForm& form);

// Componentwise complex conjugate in the canonical basis; involutive.
PhaseVector conjugate(const PhaseVector& v);

// Canonical annihilation-mode directions e_I, I = 1..N: the slots of mode I
// hold (1, -i)/sqrt(2), all other components vanish.  They satisfy
//   <e_I, e_J> = delta_IJ,  <conj(e_I), conj(e_J)> = -delta_IJ,  <e_I, conj(e_J)> = 0.
std::vector<PhaseVector> annihilation_basis(Eigen::Index n_modes);

// Single annihilation-mode direction (mode index is 0-based).
PhaseVector annihilation_vector(Eigen::Index n_modes, Eigen::Index mode);

// Row covector r with r * v == <u, v> for all v.
Eigen::RowVectorXcd product_row(const PhaseVector& u, const SymplecticForm& form);

}  // namespace gpm
