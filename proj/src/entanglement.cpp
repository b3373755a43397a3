#include "gpm/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include "gpm/tolerances.hpp"

namespace gpm {

namespace {

// Restriction of J to A (+) P with A occupying the leading modes, partially
// transposed with respect to A, as a spectrum.  Used for the localization
// diagnostics of the entanglement partner.
PTSpectrum restricted_pt_spectrum(const ComplexStructure& j, const ModeSubspace& a,
                                  const ModeSubspace& p) {
    const ModeSubspace joint = direct_sum(a, p);
    const ComplexStructure jr = restricted_structure(j, joint);
    std::vector<Eigen::Index> leading(static_cast<std::size_t>(a.mode_count()));
    for (Eigen::Index k = 0; k < a.mode_count(); ++k) leading[static_cast<std::size_t>(k)] = k;
    const ModeSubspace a_inside = ModeSubspace::canonical_modes(joint.mode_count(), leading);
    return pt_spectrum(partial_transpose(jr, a_inside));
}

}  // namespace

PartialTranspose partial_transpose(const ComplexStructure& j, const ModeSubspace& a) {
    if (a.kind() != SubspaceKind::bosonic) {
        throw DimensionError("partial_transpose: expected a bosonic subspace");
    }
    if (a.ambient_dim() != j.dim()) {
        throw DimensionError(
            "partial_transpose: subspace does not live in the map's phase space");
    }
    const auto& form = j.form;

    // In a Darboux basis adapted to A the momentum flip exchanges gamma_I with
    // conj(gamma_I) and leaves the symplectic complement alone:
    //   T_A = (I - Pi_A) + sum_I [conj(gamma_I) <gamma_I, .> - gamma_I <conj(gamma_I), .>].
    ComplexMatrix t = complement_projector(a);
    for (Eigen::Index k = 0; k < a.mode_count(); ++k) {
        const PhaseVector& g = a.mode_vector(k);
        const PhaseVector gc = g.conjugate();
        t += gc * product_row(g, form) - g * product_row(gc, form);
    }
    if (t.imag().norm() > 1e-9 * std::max(1.0, t.norm())) {
        throw InternalConsistencyError("partial_transpose: flip map is not real");
    }
    const RealMatrix flip = t.real();
    const RealMatrix sigma_t = flip.transpose() * covariance_of(j) * flip;
    RealMatrix map = -kHbar * (form.matrix * sigma_t);
    return PartialTranspose{a, flip, std::move(map), form};
}

std::vector<double> PTSpectrum::values() const {
    std::vector<double> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) out.push_back(p.nu);
    return out;
}

std::vector<double> PTSpectrum::subunity_values() const {
    std::vector<double> out;
    out.reserve(subunity.size());
    for (std::size_t idx : subunity) out.push_back(pairs[idx].nu);
    return out;
}

PTSpectrum pt_spectrum(const PartialTranspose& pt) {
    auto spectrum = eigen_spectrum(pt.map, pt.form);
    PTSpectrum out;
    out.pairs = std::move(spectrum.pairs);
    for (std::size_t k = 0; k < out.pairs.size(); ++k) {
        if (out.pairs[k].nu < 1.0 - tol::subunity) out.subunity.push_back(k);
    }
    return out;
}

double log_negativity(const ComplexStructure& j, const ModeSubspace& a) {
    const auto spectrum = pt_spectrum(partial_transpose(j, a));
    double total = 0.0;
    for (std::size_t idx : spectrum.subunity) {
        total += -std::log2(spectrum.pairs[idx].nu);
    }
    return total;
}

double log_negativity(const GaussianState& state, const ModeSubspace& a) {
    return log_negativity(complex_structure(state), a);
}

bool is_non_ppt(const ComplexStructure& j, const ModeSubspace& a) {
    return !pt_spectrum(partial_transpose(j, a)).subunity.empty();
}

bool is_non_ppt(const GaussianState& state, const ModeSubspace& a) {
    return is_non_ppt(complex_structure(state), a);
}

PartnerResult entanglement_partner(const ModeSubspace& a, const ComplexStructure& j) {
    if (a.is_empty()) {
        throw DimensionError("entanglement_partner: subsystem A must have at least one mode");
    }
    if (symplectic_spectrum(j).pairs.front().nu < 1.0 - tol::physical) {
        throw UnphysicalStateError("entanglement_partner: state violates nu >= 1");
    }
    const auto spectrum = pt_spectrum(partial_transpose(j, a));
    if (spectrum.subunity.empty()) {
        return PartnerResult{ModeSubspace::empty(a.ambient_modes()), PartnerKind::entanglement, 0,
                             0.0, true};
    }
    if (static_cast<Eigen::Index>(spectrum.subunity.size()) > a.mode_count()) {
        throw InternalConsistencyError(
            "entanglement_partner: more subunity eigenvalues than modes of A");
    }

    // E^{T_A} = span of the subunity eigenvectors and their conjugates;
    // the partner is its projection onto the complement of A.
    const ComplexMatrix project_out = complement_projector(a);
    std::vector<PhaseVector> images;
    for (std::size_t idx : spectrum.subunity) {
        const PhaseVector& e = spectrum.pairs[idx].vector;
        PhaseVector w = project_out * e;
        if (w.norm() > tol::rank) {
            images.push_back(w);
            images.push_back(w.conjugate());
        }
    }
    if (images.empty()) {
        throw InternalConsistencyError(
            "entanglement_partner: subunity eigenspace collapsed onto A");
    }
    ModeSubspace partner = symplectic_gram_schmidt(images, a.ambient_modes());

    // The subunity PT values of J restricted to A (+) partner must reproduce
    // the global ones.
    const auto restricted = restricted_pt_spectrum(j, a, partner);
    const auto global_sub = spectrum.subunity_values();
    const auto local_sub = restricted.subunity_values();
    double mismatch = 0.0;
    if (local_sub.size() != global_sub.size()) {
        mismatch = 1.0;
    } else {
        for (std::size_t k = 0; k < global_sub.size(); ++k) {
            mismatch = std::max(mismatch, std::abs(global_sub[k] - local_sub[k]));
        }
    }
    return PartnerResult{std::move(partner), PartnerKind::entanglement,
                         static_cast<Eigen::Index>(spectrum.subunity.size()), mismatch, false};
}

SubunityCountReport subunity_count_check(const ComplexStructure& j, const ModeSubspace& a) {
    const auto spectrum = pt_spectrum(partial_transpose(j, a));
    SubunityCountReport report;
    report.count = static_cast<Eigen::Index>(spectrum.subunity.size());
    report.bound = a.mode_count();
    report.subunity = spectrum.subunity_values();
    report.margin = report.subunity.empty()
                        ? 1.0
                        : 1.0 - *std::max_element(report.subunity.begin(), report.subunity.end());
    if (report.count > report.bound) {
        throw InternalConsistencyError(
            "subunity_count_check: subunity count exceeds the mode count of A");
    }
    return report;
}

}  // namespace gpm
