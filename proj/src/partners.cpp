#include "gpm/partners.hpp"

#include <algorithm>
#include <cmath>

#include "gpm/tolerances.hpp"

namespace gpm {

namespace {

// Collect the nonzero images of the columns under `map`, dropping directions
// already absorbed by earlier ones (rank-revealing happens later in the
// symplectic orthonormalization; here we only skip numerically null images).
void push_images(const ComplexMatrix& map, const std::vector<PhaseVector>& vectors,
                 std::vector<PhaseVector>& out) {
    for (const auto& v : vectors) {
        PhaseVector w = map * v;
        if (w.norm() > tol::rank) out.push_back(std::move(w));
    }
}

Eigen::Index correlated_mode_count(const ComplexStructure& j, const ModeSubspace& a) {
    const auto spectrum = symplectic_spectrum(restricted_structure(j, a));
    Eigen::Index count = 0;
    for (const auto& p : spectrum.pairs) {
        if (p.nu > 1.0 + tol::correlated_nu) ++count;
    }
    return count;
}

}  // namespace

ComplexMatrix EigenspaceProjectors::plus_total() const {
    if (groups.empty()) return ComplexMatrix();
    ComplexMatrix total = ComplexMatrix::Zero(groups.front().plus.rows(),
                                              groups.front().plus.cols());
    for (const auto& g : groups) total += g.plus;
    return total;
}

PartnerResult pure_partner(const ModeSubspace& a, const ComplexStructure& j) {
    if (a.ambient_dim() != j.dim()) {
        throw DimensionError("pure_partner: subspace does not live in the map's phase space");
    }
    if (!is_pure(j)) {
        throw WrongPurityError("pure_partner: state is not pure");
    }
    if (a.is_empty()) {
        return PartnerResult{ModeSubspace::empty(a.ambient_modes()), PartnerKind::pure, 0, 0.0,
                             true};
    }

    const auto uncorrelated = is_uncorrelated(a, j);
    if (uncorrelated.uncorrelated) {
        return PartnerResult{ModeSubspace::empty(a.ambient_modes()), PartnerKind::pure, 0,
                             uncorrelated.residual, true};
    }

    const ComplexMatrix project_out = complement_projector(a);
    std::vector<PhaseVector> images;
    push_images(project_out * j.map.cast<Complex>(), a.basis(), images);
    ModeSubspace partner = symplectic_gram_schmidt(images, a.ambient_modes());

    const Eigen::Index modes = correlated_mode_count(j, a);
    if (partner.mode_count() != modes) {
        throw InternalConsistencyError(
            "pure_partner: partner dimension disagrees with the count of nu(J_A) > 1");
    }
    const auto joint = direct_sum(a, partner);
    const double residual = is_uncorrelated(joint, j).residual;
    return PartnerResult{std::move(partner), PartnerKind::pure, modes, residual, false};
}

EigenspaceProjectors eigenspace_projectors(const ComplexStructure& j) {
    const auto spectrum = symplectic_spectrum(j);
    const auto& form = j.form;

    EigenspaceProjectors out;
    std::size_t lo = 0;
    while (lo < spectrum.pairs.size()) {
        std::size_t hi = lo + 1;
        while (hi < spectrum.pairs.size() &&
               std::abs(spectrum.pairs[hi].nu - spectrum.pairs[hi - 1].nu) <=
                   tol::degeneracy_group * std::max(1.0, spectrum.pairs[hi].nu)) {
            ++hi;
        }
        EigenspaceProjectors::Group g;
        double nu_acc = 0.0;
        g.plus = ComplexMatrix::Zero(form.dim(), form.dim());
        g.minus = ComplexMatrix::Zero(form.dim(), form.dim());
        for (std::size_t k = lo; k < hi; ++k) {
            const PhaseVector& e = spectrum.pairs[k].vector;
            const PhaseVector ec = e.conjugate();
            g.plus += e * product_row(e, form);
            g.minus -= ec * product_row(ec, form);
            nu_acc += spectrum.pairs[k].nu;
        }
        g.nu = nu_acc / static_cast<double>(hi - lo);
        out.groups.push_back(std::move(g));
        lo = hi;
    }
    return out;
}

PartnerResult correlation_partner(const ModeSubspace& a, const ComplexStructure& j) {
    if (a.ambient_dim() != j.dim()) {
        throw DimensionError(
            "correlation_partner: subspace does not live in the map's phase space");
    }
    {
        const auto report = symplectic_spectrum(j);
        if (report.pairs.front().nu < 1.0 - tol::physical) {
            throw UnphysicalStateError("correlation_partner: state violates nu >= 1");
        }
    }
    if (a.is_empty()) {
        return PartnerResult{ModeSubspace::empty(a.ambient_modes()), PartnerKind::correlation, 0,
                             0.0, true};
    }

    const auto projectors = eigenspace_projectors(j);

    // Mode count = dim(Pi+ Gamma_A) - N_A where Pi+ Gamma_A is the direct sum
    // of the per-eigenspace images, so the rank is summed group by group.
    Eigen::Index plus_rank = 0;
    for (const auto& g : projectors.groups) {
        ComplexMatrix images(a.ambient_dim(), a.dim());
        for (Eigen::Index k = 0; k < a.dim(); ++k) {
            images.col(k) = g.plus * a.basis()[static_cast<std::size_t>(k)];
        }
        Eigen::JacobiSVD<ComplexMatrix> svd(images);
        const auto& sv = svd.singularValues();
        for (Eigen::Index k = 0; k < sv.size(); ++k) {
            if (sv(k) > tol::rank * std::max(1.0, sv(0))) ++plus_rank;
        }
    }
    const Eigen::Index modes = plus_rank - a.mode_count();

    if (modes <= 0) {
        const double residual = is_uncorrelated(a, j).residual;
        return PartnerResult{ModeSubspace::empty(a.ambient_modes()), PartnerKind::correlation, 0,
                             residual, true};
    }

    // Gamma_B = (+)_I (Pi_I^+ Gamma_A (+) Pi_I^- Gamma_A) contains A; the
    // partner is its projection onto the complement of A.  The collected
    // images may be linearly dependent; the orthonormalization drops them.
    const ComplexMatrix project_out = complement_projector(a);
    std::vector<PhaseVector> images;
    for (const auto& g : projectors.groups) {
        push_images(project_out * g.plus, a.basis(), images);
        push_images(project_out * g.minus, a.basis(), images);
    }
    ModeSubspace partner = symplectic_gram_schmidt(images, a.ambient_modes());
    if (partner.mode_count() != modes) {
        throw InternalConsistencyError(
            "correlation_partner: partner dimension disagrees with dim(Pi+ Gamma_A) - N_A");
    }

    const auto joint = direct_sum(a, partner);
    const double residual = is_uncorrelated(joint, j).residual;
    return PartnerResult{std::move(partner), PartnerKind::correlation, modes, residual, false};
}

}  // namespace gpm
