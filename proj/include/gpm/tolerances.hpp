#pragma once

namespace gpm::tol {

// Absolute tolerance for scalar equality checks.
inline constexpr double equality = 1e-10;

// A state counts as physical when min_I nu_I >= 1 - physical.
inline constexpr double physical = 1e-9;

// |nu_I - nu_J| <= degeneracy_group * max(1, nu_J) merges two eigenvalues
// into one eigenspace.
inline constexpr double degeneracy_group = 1e-8;

// A state counts as pure when prod_I 1/nu_I >= 1 - purity.
inline constexpr double purity = 1e-8;

// nu > 1 + correlated_nu marks a correlated mode; nu within
// [1 - correlated_nu, 1 + correlated_nu] counts as uncorrelated.
inline constexpr double correlated_nu = 1e-7;

// A partial-transpose eigenvalue counts as subunity when nu < 1 - subunity.
inline constexpr double subunity = 1e-9;

// Relative threshold for rank decisions when assembling spans.
inline constexpr double rank = 1e-9;

// Subspace equality: Frobenius distance between symplectic projectors.
inline constexpr double span = 1e-9;

// Beyond this condition number the Gram matrix is declared degenerate.
inline constexpr double gram_condition_max = 1e12;

// sigma -> J -> sigma round trips must close to this (relative Frobenius).
inline constexpr double round_trip = 1e-12;

// Relative residual allowed on eigenpairs of J.
inline constexpr double eigen_residual = 1e-9;

}  // namespace gpm::tol
