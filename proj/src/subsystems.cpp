#include "gpm/subsystems.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "gpm/tolerances.hpp"

namespace gpm {

namespace {

constexpr Complex kI{0.0, 1.0};

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

void require_bosonic(const ModeSubspace& sub, const char* who) {
    if (sub.kind() != SubspaceKind::bosonic) {
        throw DimensionError(std::string(who) + ": expected a bosonic subspace");
    }
}

// Gram inverse with the ill-conditioning guard.
ComplexMatrix gram_inverse(const ComplexMatrix& gram) {
    Eigen::JacobiSVD<ComplexMatrix> svd(gram, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(sv.size() - 1) * tol::gram_condition_max < sv(0) ||
        sv(sv.size() - 1) <= 0.0) {
        throw DegenerateSubspaceError("gram_inverse: Gram matrix is singular or ill-conditioned");
    }
    return svd.solve(ComplexMatrix::Identity(gram.rows(), gram.cols()));
}

}  // namespace

const PhaseVector& ModeSubspace::mode_vector(Eigen::Index k) const {
    if (k < 0 || k >= mode_count()) {
        throw DimensionError("ModeSubspace::mode_vector: index out of range");
    }
    return basis_[static_cast<std::size_t>(k)];
}

ModeSubspace ModeSubspace::from_normalized(std::vector<PhaseVector> basis,
                                           Eigen::Index ambient_modes, SubspaceKind kind) {
    if (ambient_modes < 1) {
        throw DimensionError("ModeSubspace: ambient space needs at least one mode");
    }
    const auto form = symplectic_form(ambient_modes);
    if (basis.size() % 2 != 0) {
        throw DegenerateSubspaceError("ModeSubspace: normalized basis must have even size");
    }
    for (const auto& v : basis) {
        if (v.size() != form.dim()) {
            throw DimensionError("ModeSubspace: basis vector length mismatch");
        }
    }
    const auto m = static_cast<Eigen::Index>(basis.size()) / 2;
    if (kind == SubspaceKind::bosonic) {
        for (Eigen::Index k = 0; k < m; ++k) {
            if ((basis[static_cast<std::size_t>(m + k)] -
                 basis[static_cast<std::size_t>(k)].conjugate())
                    .norm() > 1e-9) {
                throw InternalConsistencyError(
                    "ModeSubspace: normalized basis is not conjugate-paired");
            }
        }
        const ComplexMatrix gram = gram_matrix(basis, form);
        ComplexMatrix want = ComplexMatrix::Zero(2 * m, 2 * m);
        want.topLeftCorner(m, m).setIdentity();
        want.bottomRightCorner(m, m) = -ComplexMatrix::Identity(m, m);
        if ((gram - want).norm() > 1e-7 * std::max<double>(1, 2 * m)) {
            throw InternalConsistencyError("ModeSubspace: basis is not symplectically normalized");
        }
    } else {
        for (std::size_t a = 0; a < basis.size(); ++a) {
            if (basis[a].imag().norm() > 1e-10) {
                throw InternalConsistencyError("ModeSubspace: fermionic basis must be real");
            }
            for (std::size_t b = 0; b < basis.size(); ++b) {
                const double want = a == b ? 1.0 : 0.0;
                if (std::abs(basis[a].dot(basis[b]).real() - want) > 1e-8) {
                    throw InternalConsistencyError(
                        "ModeSubspace: fermionic basis is not orthonormal");
                }
            }
        }
    }
    return ModeSubspace(std::move(basis), ambient_modes, kind);
}

ModeSubspace ModeSubspace::empty(Eigen::Index ambient_modes) {
    if (ambient_modes < 1) {
        throw DimensionError("ModeSubspace: ambient space needs at least one mode");
    }
    return ModeSubspace({}, ambient_modes, SubspaceKind::bosonic);
}

ModeSubspace ModeSubspace::from_vectors(const std::vector<PhaseVector>& vectors,
                                        Eigen::Index ambient_modes) {
    return symplectic_gram_schmidt(vectors, ambient_modes);
}

ModeSubspace ModeSubspace::canonical_modes(Eigen::Index n_modes,
                                           const std::vector<Eigen::Index>& modes) {
    std::vector<PhaseVector> basis;
    basis.reserve(2 * modes.size());
    for (Eigen::Index m : modes) basis.push_back(annihilation_vector(n_modes, m));
    for (Eigen::Index m : modes) basis.push_back(annihilation_vector(n_modes, m).conjugate());
    return from_normalized(std::move(basis), n_modes, SubspaceKind::bosonic);
}

ModeSubspace ModeSubspace::full(Eigen::Index n_modes) {
    std::vector<Eigen::Index> all(static_cast<std::size_t>(n_modes));
    for (Eigen::Index k = 0; k < n_modes; ++k) all[static_cast<std::size_t>(k)] = k;
    return canonical_modes(n_modes, all);
}

ModeSubspace ModeSubspace::fermionic_from_vectors(const std::vector<RealVector>& vectors,
                                                  Eigen::Index ambient_modes) {
    if (ambient_modes < 1) {
        throw DimensionError("ModeSubspace: ambient space needs at least one mode");
    }
    const Eigen::Index dim = 2 * ambient_modes;
    if (vectors.empty()) return ModeSubspace({}, ambient_modes, SubspaceKind::fermionic);
    RealMatrix v(dim, static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        if (vectors[k].size() != dim) {
            throw DimensionError("ModeSubspace: fermionic vector length mismatch");
        }
        v.col(static_cast<Eigen::Index>(k)) = vectors[k];
    }
    Eigen::JacobiSVD<RealMatrix> svd(v, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv(k) > tol::rank * std::max(1.0, sv(0))) ++rank;
    }
    if (rank % 2 != 0) {
        throw DegenerateSubspaceError("fermionic subsystems must be even-dimensional");
    }
    std::vector<PhaseVector> basis;
    basis.reserve(static_cast<std::size_t>(rank));
    for (Eigen::Index k = 0; k < rank; ++k) {
        basis.push_back(svd.matrixU().col(k).cast<Complex>());
    }
    return ModeSubspace(std::move(basis), ambient_modes, SubspaceKind::fermionic);
}

ComplexMatrix gram_matrix(const std::vector<PhaseVector>& basis, const SymplecticForm& form) {
    const auto n = static_cast<Eigen::Index>(basis.size());
    ComplexMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            g(i, j) = symplectic_product(basis[static_cast<std::size_t>(i)],
                                         basis[static_cast<std::size_t>(j)], form);
        }
    }
    return g;
}

ModeSubspace symplectic_gram_schmidt(const std::vector<PhaseVector>& vectors,
                                     Eigen::Index ambient_modes) {
    if (ambient_modes < 1) {
        throw DimensionError("symplectic_gram_schmidt: ambient space needs at least one mode");
    }
    const auto form = symplectic_form(ambient_modes);
    const Eigen::Index dim = form.dim();
    if (vectors.empty()) return ModeSubspace::empty(ambient_modes);

    // The conjugation-closed span of the inputs is the complexification of the
    // real span of their real and imaginary parts; work with the latter.
    RealMatrix parts(dim, 2 * static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        if (vectors[k].size() != dim) {
            throw DimensionError("symplectic_gram_schmidt: vector length mismatch");
        }
        parts.col(2 * static_cast<Eigen::Index>(k)) = vectors[k].real();
        parts.col(2 * static_cast<Eigen::Index>(k) + 1) = vectors[k].imag();
    }
    Eigen::JacobiSVD<RealMatrix> svd(parts, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv(k) > tol::rank * std::max(1.0, sv(0))) ++rank;
    }
    if (rank == 0) return ModeSubspace::empty(ambient_modes);
    if (rank % 2 != 0) {
        throw DegenerateSubspaceError("symplectic_gram_schmidt: span has odd real dimension");
    }
    const RealMatrix r = svd.matrixU().leftCols(rank);

    // Restriction of the pseudo-inner product to the span: H = i * R^T Omega R,
    // Hermitian with eigenvalues in +/- pairs.  Eigenvectors for +lambda and
    // -lambda are complex conjugates, which yields the conjugate-paired output.
    RealMatrix k = r.transpose() * form.matrix * r;
    k = 0.5 * (k - k.transpose().eval());
    const ComplexMatrix h = kI * k.cast<Complex>();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    if (es.info() != Eigen::Success) {
        throw NumericalDegeneracyError("symplectic_gram_schmidt: eigensolver failed");
    }
    const auto& lambda = es.eigenvalues();
    const double lmax = lambda.cwiseAbs().maxCoeff();
    // the R columns are unit vectors, so a symplectic span has lmax of order
    // one; an all-null form signals an isotropic (non-symplectic) span
    if (lmax <= 1e-12 || lambda.cwiseAbs().minCoeff() * tol::gram_condition_max < lmax) {
        throw DegenerateSubspaceError(
            "symplectic_gram_schmidt: span is degenerate (not symplectic)");
    }
    Eigen::Index positives = 0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (lambda(i) > 0.0) ++positives;
    }
    if (positives != rank / 2) {
        throw DegenerateSubspaceError("symplectic_gram_schmidt: unbalanced signature");
    }

    struct Candidate {
        double lambda;
        PhaseVector vector;
    };
    std::vector<Candidate> picked;
    picked.reserve(static_cast<std::size_t>(positives));
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (lambda(i) <= 0.0) continue;
        PhaseVector gamma = (r.cast<Complex>() * es.eigenvectors().col(i)) / std::sqrt(lambda(i));
        fix_phase(gamma);
        picked.push_back({lambda(i), std::move(gamma)});
    }
    std::sort(picked.begin(), picked.end(), [](const Candidate& a, const Candidate& b) {
        if (std::abs(a.lambda - b.lambda) > 1e-12 * std::max(1.0, b.lambda)) {
            return a.lambda > b.lambda;
        }
        for (Eigen::Index c = 0; c < a.vector.size(); ++c) {
            if (a.vector(c).real() != b.vector(c).real()) {
                return a.vector(c).real() < b.vector(c).real();
            }
            if (a.vector(c).imag() != b.vector(c).imag()) {
                return a.vector(c).imag() < b.vector(c).imag();
            }
        }
        return false;
    });

    std::vector<PhaseVector> basis;
    basis.reserve(static_cast<std::size_t>(rank));
    for (const auto& c : picked) basis.push_back(c.vector);
    for (const auto& c : picked) basis.push_back(c.vector.conjugate());
    return ModeSubspace::from_normalized(std::move(basis), ambient_modes, SubspaceKind::bosonic);
}

SymplecticProjector symplectic_projector(const ModeSubspace& sub) {
    require_bosonic(sub, "symplectic_projector");
    const auto form = symplectic_form(sub.ambient_modes());
    ComplexMatrix pi = ComplexMatrix::Zero(form.dim(), form.dim());
    if (!sub.is_empty()) {
        const ComplexMatrix b = gram_inverse(gram_matrix(sub.basis(), form));
        for (Eigen::Index i = 0; i < sub.dim(); ++i) {
            for (Eigen::Index j = 0; j < sub.dim(); ++j) {
                if (b(i, j) == Complex{0.0, 0.0}) continue;
                pi += b(i, j) * sub.basis()[static_cast<std::size_t>(i)] *
                      product_row(sub.basis()[static_cast<std::size_t>(j)], form);
            }
        }
    }
    return SymplecticProjector{std::move(pi), sub};
}

ComplexMatrix complement_projector(const ModeSubspace& sub) {
    return ComplexMatrix::Identity(sub.ambient_dim(), sub.ambient_dim()) -
           symplectic_projector(sub).matrix;
}

ModeSubspace symplectic_complement(const ModeSubspace& sub) {
    require_bosonic(sub, "symplectic_complement");
    if (sub.is_empty()) return ModeSubspace::full(sub.ambient_modes());
    const auto form = symplectic_form(sub.ambient_modes());
    ComplexMatrix rows(sub.dim(), form.dim());
    for (Eigen::Index i = 0; i < sub.dim(); ++i) {
        rows.row(i) = product_row(sub.basis()[static_cast<std::size_t>(i)], form);
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(rows, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    std::vector<PhaseVector> kernel;
    for (Eigen::Index k = 0; k < form.dim(); ++k) {
        const bool null = k >= sv.size() || sv(k) <= tol::rank * std::max(1.0, sv(0));
        if (null) kernel.push_back(svd.matrixV().col(k));
    }
    if (kernel.empty()) return ModeSubspace::empty(sub.ambient_modes());
    return symplectic_gram_schmidt(kernel, sub.ambient_modes());
}

ComplexMatrix restrict_map(const ComplexStructure& j, const ModeSubspace& sub) {
    require_bosonic(sub, "restrict_map");
    if (j.dim() != sub.ambient_dim()) {
        throw DimensionError("restrict_map: subspace does not live in the map's phase space");
    }
    if (sub.is_empty()) return ComplexMatrix(0, 0);
    const auto& form = j.form;
    ComplexMatrix gj(sub.dim(), sub.dim());
    for (Eigen::Index a = 0; a < sub.dim(); ++a) {
        const PhaseVector jxi = j.map.cast<Complex>() * sub.basis()[static_cast<std::size_t>(a)];
        for (Eigen::Index i = 0; i < sub.dim(); ++i) {
            gj(i, a) = symplectic_product(sub.basis()[static_cast<std::size_t>(i)], jxi, form);
        }
    }
    return gram_inverse(gram_matrix(sub.basis(), form)) * gj;
}

ComplexStructure restricted_structure(const ComplexStructure& j, const ModeSubspace& sub) {
    if (sub.is_empty()) {
        throw DimensionError("restricted_structure: subspace is empty");
    }
    const ComplexMatrix coords = restrict_map(j, sub);
    const Eigen::Index m = sub.mode_count();
    // Identify gamma_k with the canonical e_k of a standalone M-mode space.
    ComplexMatrix e(2 * m, 2 * m);
    for (Eigen::Index k = 0; k < m; ++k) {
        e.col(k) = annihilation_vector(m, k);
        e.col(m + k) = annihilation_vector(m, k).conjugate();
    }
    const ComplexMatrix small = e * coords * e.inverse();
    if (small.imag().norm() > 1e-8 * std::max(1.0, small.norm())) {
        throw InternalConsistencyError("restricted_structure: restriction is not a real map");
    }
    return complex_structure_from_map(small.real());
}

GaussianState reduced_state(const GaussianState& state, const ModeSubspace& sub) {
    const ComplexStructure jr = restricted_structure(complex_structure(state), sub);
    RealMatrix sigma = covariance_of(jr);
    sigma = 0.5 * (sigma + sigma.transpose().eval());

    // Mean of the new Darboux quadratures: <x_k> = -p_k^T Omega mu,
    // <p_k> = x_k^T Omega mu with x_k = (g + g*)/sqrt2, p_k = i(g - g*)/sqrt2.
    const Eigen::Index m = sub.mode_count();
    RealVector mean = RealVector::Zero(2 * m);
    const RealVector omega_mu = symplectic_form(sub.ambient_modes()).matrix * state.mean;
    for (Eigen::Index k = 0; k < m; ++k) {
        const PhaseVector& g = sub.mode_vector(k);
        const RealVector x = ((g + g.conjugate()) / std::sqrt(2.0)).real();
        const RealVector p = (kI * (g - g.conjugate()) / std::sqrt(2.0)).real();
        mean(2 * k) = -p.dot(omega_mu);
        mean(2 * k + 1) = x.dot(omega_mu);
    }
    return GaussianState{std::move(mean), std::move(sigma), jr.form};
}

UncorrelatedTest is_uncorrelated(const ModeSubspace& sub, const ComplexStructure& j) {
    require_bosonic(sub, "is_uncorrelated");
    if (j.dim() != sub.ambient_dim()) {
        throw DimensionError("is_uncorrelated: subspace does not live in the map's phase space");
    }
    if (sub.is_empty() || sub.mode_count() == sub.ambient_modes()) {
        return UncorrelatedTest{true, 0.0};
    }
    const ComplexMatrix pi = symplectic_projector(sub).matrix;
    const ComplexMatrix jc = j.map.cast<Complex>();
    const double residual = (pi * jc - jc * pi).norm() / std::max(j.map.norm(), 1e-300);
    return UncorrelatedTest{residual <= tol::physical, residual};
}

ComplexMatrix correlation_block(const GaussianState& state, const ModeSubspace& a,
                                const ModeSubspace& b) {
    require_bosonic(a, "correlation_block");
    require_bosonic(b, "correlation_block");
    if (a.ambient_modes() != b.ambient_modes() || a.ambient_dim() != state.dim()) {
        throw DimensionError("correlation_block: mismatched phase spaces");
    }
    const auto form = symplectic_form(a.ambient_modes());
    for (const auto& u : a.basis()) {
        for (const auto& v : b.basis()) {
            if (std::abs(symplectic_product(u, v, form)) > 1e-8) {
                throw DimensionError("correlation_block: subsystems are not symplectically "
                                     "orthogonal");
            }
        }
    }
    const ComplexMatrix sigma = state.covariance.cast<Complex>();
    ComplexMatrix c(a.dim(), b.dim());
    for (Eigen::Index i = 0; i < a.dim(); ++i) {
        for (Eigen::Index jx = 0; jx < b.dim(); ++jx) {
            c(i, jx) = (a.basis()[static_cast<std::size_t>(i)].conjugate().transpose() * sigma *
                        b.basis()[static_cast<std::size_t>(jx)].conjugate())
                           .value();
        }
    }
    return c;
}

double span_distance(const ModeSubspace& a, const ModeSubspace& b) {
    if (a.ambient_modes() != b.ambient_modes()) {
        throw DimensionError("span_distance: different ambient spaces");
    }
    if (a.kind() != b.kind()) {
        throw DimensionError("span_distance: mixed subspace kinds");
    }
    if (a.kind() == SubspaceKind::fermionic) {
        auto proj = [](const ModeSubspace& s) {
            ComplexMatrix p = ComplexMatrix::Zero(s.ambient_dim(), s.ambient_dim());
            for (const auto& v : s.basis()) p += v * v.adjoint();
            return p;
        };
        return (proj(a) - proj(b)).norm();
    }
    return (symplectic_projector(a).matrix - symplectic_projector(b).matrix).norm();
}

ModeSubspace direct_sum(const ModeSubspace& a, const ModeSubspace& b) {
    require_bosonic(a, "direct_sum");
    require_bosonic(b, "direct_sum");
    if (a.ambient_modes() != b.ambient_modes()) {
        throw DimensionError("direct_sum: different ambient spaces");
    }
    if (a.is_empty()) return b;
    if (b.is_empty()) return a;
    const auto form = symplectic_form(a.ambient_modes());
    for (const auto& u : a.basis()) {
        for (const auto& v : b.basis()) {
            if (std::abs(symplectic_product(u, v, form)) > 1e-8) {
                throw DimensionError("direct_sum: subsystems are not symplectically orthogonal");
            }
        }
    }
    std::vector<PhaseVector> basis;
    basis.reserve(static_cast<std::size_t>(a.dim() + b.dim()));
    for (Eigen::Index k = 0; k < a.mode_count(); ++k) basis.push_back(a.mode_vector(k));
    for (Eigen::Index k = 0; k < b.mode_count(); ++k) basis.push_back(b.mode_vector(k));
    const auto modes = basis.size();
    for (std::size_t k = 0; k < modes; ++k) basis.push_back(basis[k].conjugate());
    return ModeSubspace::from_normalized(std::move(basis), a.ambient_modes(),
                                         SubspaceKind::bosonic);
}

}  // namespace gpm
