#include "gpm/gaussian_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "gpm/random.hpp"
#include "gpm/tolerances.hpp"

namespace gpm {

namespace {

constexpr Complex kI{0.0, 1.0};

// Rotate v so its largest-magnitude component is real and positive;
// near-ties resolved toward the lowest index.
void fix_phase(PhaseVector& v) {
    const double maxmag = v.cwiseAbs().maxCoeff();
    if (maxmag <= 0.0) return;
    Eigen::Index pivot = 0;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        if (std::abs(v(k)) >= maxmag * (1.0 - 1e-9)) {
            pivot = k;
            break;
        }
    }
    const Complex c = v(pivot);
    if (std::abs(c) == 0.0) return;
    v *= std::conj(c) / std::abs(c);
}

bool lex_less(const PhaseVector& a, const PhaseVector& b) {
    for (Eigen::Index k = 0; k < a.size(); ++k) {
        if (a(k).real() != b(k).real()) return a(k).real() < b(k).real();
        if (a(k).imag() != b(k).imag()) return a(k).imag() < b(k).imag();
    }
    return false;
}

}  // namespace

std::vector<double> SymplecticSpectrum::values() const {
    std::vector<double> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) out.push_back(p.nu);
    return out;
}

GaussianState vacuum_state(Eigen::Index n_modes) {
    auto form = symplectic_form(n_modes);
    return GaussianState{RealVector::Zero(form.dim()), RealMatrix::Identity(form.dim(), form.dim()),
                         std::move(form)};
}

GaussianState state_from_covariance(RealMatrix covariance, RealVector mean) {
    if (covariance.rows() != covariance.cols() || covariance.rows() % 2 != 0 ||
        covariance.rows() == 0) {
        throw DimensionError("state_from_covariance: covariance must be square with even size");
    }
    if (mean.size() != covariance.rows()) {
        throw DimensionError("state_from_covariance: mean length does not match covariance");
    }
    auto form = symplectic_form(covariance.rows() / 2);
    return GaussianState{std::move(mean), std::move(covariance), std::move(form)};
}

GaussianState state_from_covariance(RealMatrix covariance) {
    RealVector mean = RealVector::Zero(covariance.rows());
    return state_from_covariance(std::move(covariance), std::move(mean));
}

ComplexStructure complex_structure(const GaussianState& state) {
    if (state.covariance.rows() != state.dim() || state.covariance.cols() != state.dim()) {
        throw DimensionError("complex_structure: covariance does not match the symplectic form");
    }
    return ComplexStructure{-kHbar * (state.form.matrix * state.covariance), state.form};
}

ComplexStructure complex_structure_from_map(RealMatrix j) {
    if (j.rows() != j.cols() || j.rows() % 2 != 0 || j.rows() == 0) {
        throw DimensionError("complex_structure_from_map: map must be square with even size");
    }
    auto form = symplectic_form(j.rows() / 2);
    return ComplexStructure{std::move(j), std::move(form)};
}

RealMatrix covariance_of(const ComplexStructure& j) {
    // sigma = Omega * J / hbar; exact inverse of J = -hbar * Omega * sigma
    // because Omega^2 = -I holds exactly for the stored block form.
    return (j.form.matrix * j.map) / kHbar;
}

SymplecticSpectrum eigen_spectrum(const RealMatrix& map, const SymplecticForm& form) {
    const Eigen::Index dim = form.dim();
    if (map.rows() != dim || map.cols() != dim) {
        throw DimensionError("eigen_spectrum: map does not match the symplectic form");
    }
    const double scale = std::max(1.0, map.norm());

    Eigen::ComplexEigenSolver<ComplexMatrix> solver(map.cast<Complex>());
    if (solver.info() != Eigen::Success) {
        throw NumericalDegeneracyError("eigen_spectrum: eigensolver failed to converge");
    }

    std::vector<SymplecticSpectrum::Pair> pairs;
    pairs.reserve(static_cast<std::size_t>(form.n_modes));
    for (Eigen::Index k = 0; k < dim; ++k) {
        const Complex lambda = solver.eigenvalues()(k);
        if (std::abs(lambda.real()) > tol::eigen_residual * scale) {
            throw NumericalDegeneracyError(
                "eigen_spectrum: eigenvalue off the imaginary axis beyond tolerance");
        }
        if (lambda.imag() <= 0.0) continue;  // keep the +i*nu branch only
        pairs.push_back({lambda.imag(), solver.eigenvectors().col(k)});
    }
    if (pairs.size() != static_cast<std::size_t>(form.n_modes)) {
        throw NumericalDegeneracyError("eigen_spectrum: eigenvalues do not split into +/- pairs");
    }

    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return a.nu < b.nu; });

    // Within a degenerate group the solver returns an arbitrary basis of the
    // eigenspace; orthonormalize it in the pseudo-inner product (which is
    // positive definite on the +i*nu branch).
    std::size_t lo = 0;
    while (lo < pairs.size()) {
        std::size_t hi = lo + 1;
        while (hi < pairs.size() &&
               std::abs(pairs[hi].nu - pairs[hi - 1].nu) <=
                   tol::degeneracy_group * std::max(1.0, pairs[hi].nu)) {
            ++hi;
        }
        for (std::size_t a = lo; a < hi; ++a) {
            PhaseVector v = pairs[a].vector;
            for (std::size_t b = lo; b < a; ++b) {
                v -= pairs[b].vector * symplectic_product(pairs[b].vector, v, form);
            }
            const Complex norm = symplectic_product(v, v, form);
            if (!(norm.real() > tol::eigen_residual * tol::eigen_residual)) {
                throw NumericalDegeneracyError(
                    "eigen_spectrum: eigenvector with non-positive symplectic norm");
            }
            pairs[a].vector = v / std::sqrt(norm.real());
        }
        lo = hi;
    }

    for (auto& p : pairs) {
        fix_phase(p.vector);
        const double residual = (map.cast<Complex>() * p.vector - kI * p.nu * p.vector).norm();
        if (residual > tol::eigen_residual * scale) {
            throw NumericalDegeneracyError("eigen_spectrum: eigenpair residual beyond tolerance");
        }
    }

    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
        if (std::abs(a.nu - b.nu) > 1e-12 * std::max(1.0, b.nu)) return a.nu < b.nu;
        return lex_less(a.vector, b.vector);
    });

    return SymplecticSpectrum{std::move(pairs)};
}

SymplecticSpectrum symplectic_spectrum(const ComplexStructure& j) {
    return eigen_spectrum(j.map, j.form);
}

double purity(const ComplexStructure& j) {
    double p = 1.0;
    for (const auto& pair : symplectic_spectrum(j).pairs) p /= pair.nu;
    return p;
}

bool is_pure(const ComplexStructure& j) { return purity(j) >= 1.0 - tol::purity; }

ValidityReport validate_state(const GaussianState& state) {
    ValidityReport report;
    const RealMatrix& sigma = state.covariance;
    const double scale = std::max(1.0, sigma.norm());
    report.is_symmetric = (sigma - sigma.transpose()).norm() <= tol::equality * scale;

    const RealMatrix symmetrized = 0.5 * (sigma + sigma.transpose());
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(symmetrized);
    report.is_positive_definite =
        es.info() == Eigen::Success && es.eigenvalues().minCoeff() > 0.0;

    try {
        auto spectrum = eigen_spectrum(-kHbar * (state.form.matrix * symmetrized), state.form);
        report.min_symplectic_eigenvalue = spectrum.pairs.front().nu;
        double p = 1.0;
        for (const auto& pair : spectrum.pairs) p /= pair.nu;
        report.is_physical = report.min_symplectic_eigenvalue >= 1.0 - tol::physical;
        report.is_pure = report.is_physical && p >= 1.0 - tol::purity;
    } catch (const Error&) {
        report.min_symplectic_eigenvalue = std::numeric_limits<double>::quiet_NaN();
        report.is_physical = false;
        report.is_pure = false;
    }
    return report;
}

double wigner_density(const GaussianState& state, const RealVector& point) {
    if (point.size() != state.dim()) {
        throw DimensionError("wigner_density: point dimension mismatch");
    }
    Eigen::FullPivLU<RealMatrix> lu(state.covariance);
    if (!lu.isInvertible()) {
        throw DegenerateSubspaceError("wigner_density: singular covariance");
    }
    const RealVector d = point - state.mean;
    const double quad = d.dot(lu.solve(d));
    const double det = state.covariance.determinant();
    const double n = static_cast<double>(state.n_modes());
    return std::exp(-quad) / (std::pow(std::numbers::pi, n) * std::sqrt(det));
}

namespace {

GaussianState state_from_eigenbasis(const std::vector<double>& nu,
                                    const std::vector<PhaseVector>& basis) {
    const auto n = static_cast<Eigen::Index>(nu.size());
    if (n < 1) throw DimensionError("state_from_spectrum: need at least one mode");
    if (basis.size() != nu.size()) {
        throw DimensionError("state_from_spectrum: basis size does not match spectrum");
    }
    auto form = symplectic_form(n);
    for (const auto& e : basis) {
        if (e.size() != form.dim()) {
            throw DimensionError("state_from_spectrum: basis vector length mismatch");
        }
    }
    for (std::size_t a = 0; a < basis.size(); ++a) {
        if (!(nu[a] > 0.0)) {
            throw DimensionError("state_from_spectrum: symplectic eigenvalues must be positive");
        }
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const Complex g = symplectic_product(basis[a], basis[b], form);
            const Complex gc = symplectic_product(basis[a], basis[b].conjugate(), form);
            const double want = a == b ? 1.0 : 0.0;
            if (std::abs(g - want) > 1e-9 || std::abs(gc) > 1e-9) {
                throw NonOrthonormalBasisError(
                    "state_from_spectrum: basis is not symplectically orthonormal");
            }
        }
    }

    // J = sum_I i*nu_I (e_I <e_I, .> + conj(e_I) <conj(e_I), .>), manifestly real.
    ComplexMatrix j = ComplexMatrix::Zero(form.dim(), form.dim());
    for (std::size_t a = 0; a < basis.size(); ++a) {
        const PhaseVector& e = basis[a];
        const PhaseVector ec = e.conjugate();
        j += kI * nu[a] * (e * product_row(e, form) + ec * product_row(ec, form));
    }
    RealMatrix sigma = (form.matrix * j.real()) / kHbar;
    sigma = 0.5 * (sigma + sigma.transpose());
    return GaussianState{RealVector::Zero(form.dim()), std::move(sigma), std::move(form)};
}

}  // namespace

GaussianState state_from_spectrum(const std::vector<double>& nu) {
    return state_from_eigenbasis(nu, annihilation_basis(static_cast<Eigen::Index>(nu.size())));
}

GaussianState state_from_spectrum(const std::vector<double>& nu,
                                  const std::vector<PhaseVector>& basis) {
    return state_from_eigenbasis(nu, basis);
}

GaussianState state_from_spectrum(const std::vector<double>& nu, std::uint64_t seed) {
    const auto n = static_cast<Eigen::Index>(nu.size());
    if (n < 1) throw DimensionError("state_from_spectrum: need at least one mode");
    Rng rng(seed);
    const RealMatrix s = random_symplectic(n, rng);
    auto basis = annihilation_basis(n);
    for (auto& e : basis) e = s.cast<Complex>() * e;
    return state_from_eigenbasis(nu, basis);
}

}  // namespace gpm
