#include "gpm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "gpm/tolerances.hpp"

namespace gpm::oracle {

namespace {

constexpr Complex kI{0.0, 1.0};

double omega_real(const RealVector& u, const RealVector& v) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < u.size(); k += 2) {
        acc += u(k + 1) * v(k) - u(k) * v(k + 1);
    }
    return acc;
}

// Darboux pairs (x_I, p_I) of a normalized subspace basis, with the canonical
// orientation omega(x, p) = -1.
void append_subspace_pairs(const ModeSubspace& sub, std::vector<RealVector>& columns) {
    for (Eigen::Index k = 0; k < sub.mode_count(); ++k) {
        const PhaseVector& g = sub.mode_vector(k);
        columns.push_back(((g + g.conjugate()) / std::sqrt(2.0)).real());
        columns.push_back((kI * (g - g.conjugate()) / std::sqrt(2.0)).real());
    }
}

// Sequential symplectic pairing of a real spanning set: pick a vector, find
// its strongest symplectic partner, scale to omega(x, p) = -1, project the
// pair out of the rest, repeat.
std::vector<RealVector> pair_real_vectors(std::vector<RealVector> remaining) {
    std::vector<RealVector> columns;
    while (!remaining.empty()) {
        RealVector x = remaining.front();
        remaining.erase(remaining.begin());
        if (x.norm() <= 1e-10) continue;
        x /= x.norm();

        std::size_t best = 0;
        double best_mag = 0.0;
        for (std::size_t k = 0; k < remaining.size(); ++k) {
            const double mag = std::abs(omega_real(x, remaining[k]));
            if (mag > best_mag) {
                best_mag = mag;
                best = k;
            }
        }
        if (best_mag <= 1e-10) {
            throw DegenerateSubspaceError("oracle: real span is not symplectic");
        }
        RealVector p = remaining[best] * (-1.0 / omega_real(x, remaining[best]));
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));

        for (auto& v : remaining) {
            v = v - omega_real(p, v) * x + omega_real(x, v) * p;
        }
        columns.push_back(std::move(x));
        columns.push_back(std::move(p));
    }
    return columns;
}

// Real orthonormal basis of the symplectic complement of A, via the null
// space of the pairing rows.
std::vector<RealVector> real_complement(const ModeSubspace& a, const SymplecticForm& form) {
    const Eigen::Index dim = form.dim();
    if (a.is_empty()) {
        std::vector<RealVector> full;
        for (Eigen::Index k = 0; k < dim; ++k) {
            RealVector e = RealVector::Zero(dim);
            e(k) = 1.0;
            full.push_back(std::move(e));
        }
        return full;
    }
    RealMatrix rows(2 * a.dim(), dim);
    for (Eigen::Index i = 0; i < a.dim(); ++i) {
        const Eigen::RowVectorXcd r = product_row(a.basis()[static_cast<std::size_t>(i)], form);
        rows.row(2 * i) = r.real();
        rows.row(2 * i + 1) = r.imag();
    }
    Eigen::JacobiSVD<RealMatrix> svd(rows, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    std::vector<RealVector> kernel;
    for (Eigen::Index k = 0; k < dim; ++k) {
        const bool null = k >= sv.size() || sv(k) <= 1e-10 * std::max(1.0, sv(0));
        if (null) kernel.push_back(svd.matrixV().col(k));
    }
    return kernel;
}

RealMatrix frame_from_columns(const std::vector<RealVector>& columns, const SymplecticForm& form) {
    const Eigen::Index dim = form.dim();
    if (static_cast<Eigen::Index>(columns.size()) != dim) {
        throw InternalConsistencyError("oracle: adapted frame has the wrong dimension");
    }
    RealMatrix s(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        s.col(k) = columns[static_cast<std::size_t>(k)];
    }
    const RealMatrix omega_low = form.matrix.transpose();
    if ((s.transpose() * omega_low * s - omega_low).norm() > 1e-8 * static_cast<double>(dim)) {
        throw InternalConsistencyError("oracle: adapted frame is not symplectic");
    }
    return s;
}

struct PtSetup {
    RealMatrix frame;     // adapted Darboux frame, A first
    RealMatrix sigma_ad;  // sigma in that frame
    RealMatrix sigma_pt;  // momenta of A flipped
};

PtSetup pt_setup(const GaussianState& state, const ModeSubspace& a) {
    std::vector<RealVector> columns;
    append_subspace_pairs(a, columns);
    columns.reserve(static_cast<std::size_t>(state.dim()));
    {
        auto kernel = real_complement(a, state.form);
        auto paired = pair_real_vectors(std::move(kernel));
        for (auto& c : paired) columns.push_back(std::move(c));
    }
    PtSetup setup;
    setup.frame = frame_from_columns(columns, state.form);
    setup.sigma_ad = setup.frame.transpose() * state.covariance * setup.frame;
    RealVector flip = RealVector::Ones(state.dim());
    for (Eigen::Index k = 0; k < a.mode_count(); ++k) flip(2 * k + 1) = -1.0;
    setup.sigma_pt = flip.asDiagonal() * setup.sigma_ad * flip.asDiagonal();
    return setup;
}

// Spectrum of -Omega * sigma via the real general eigensolver; eigenvectors
// are returned in the caller's frame when `frame` is nonempty.
PTSpectrum real_solver_spectrum(const RealMatrix& sigma, const RealMatrix& frame) {
    const auto form = symplectic_form(sigma.rows() / 2);
    const RealMatrix map = -kHbar * (form.matrix * sigma);
    Eigen::EigenSolver<RealMatrix> solver(map);
    if (solver.info() != Eigen::Success) {
        throw NumericalDegeneracyError("oracle: real eigensolver failed");
    }
    PTSpectrum out;
    for (Eigen::Index k = 0; k < map.rows(); ++k) {
        const Complex lambda = solver.eigenvalues()(k);
        if (lambda.imag() <= 0.0) continue;
        PhaseVector v = solver.eigenvectors().col(k);
        const Complex norm = symplectic_product(v, v, form);
        if (norm.real() <= 0.0) {
            throw NumericalDegeneracyError("oracle: eigenvector with non-positive norm");
        }
        v /= std::sqrt(norm.real());
        if (frame.size() > 0) v = frame.cast<Complex>() * v;
        out.pairs.push_back({lambda.imag(), std::move(v)});
    }
    if (out.pairs.size() != static_cast<std::size_t>(map.rows() / 2)) {
        throw NumericalDegeneracyError("oracle: eigenvalues do not split into +/- pairs");
    }
    std::sort(out.pairs.begin(), out.pairs.end(),
              [](const auto& x, const auto& y) { return x.nu < y.nu; });
    for (std::size_t k = 0; k < out.pairs.size(); ++k) {
        if (out.pairs[k].nu < 1.0 - tol::subunity) out.subunity.push_back(k);
    }
    return out;
}

double blockform_residual(const GaussianState& state, const ModeSubspace& a) {
    const PtSetup setup = pt_setup(state, a);
    const Eigen::Index ad = a.dim();
    const Eigen::Index rest = state.dim() - ad;
    if (ad == 0 || rest == 0) return 0.0;
    const RealMatrix c = setup.sigma_ad.topRightCorner(ad, rest);
    return c.norm() / std::max(1.0, setup.sigma_ad.norm());
}

// sigma restricted to A (+) P in an adapted frame (A first), by columns.
RealMatrix joint_sigma(const GaussianState& state, const ModeSubspace& a,
                       const ModeSubspace& p) {
    std::vector<RealVector> columns;
    append_subspace_pairs(a, columns);
    append_subspace_pairs(p, columns);
    RealMatrix s(state.dim(), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t k = 0; k < columns.size(); ++k) {
        s.col(static_cast<Eigen::Index>(k)) = columns[k];
    }
    return s.transpose() * state.covariance * s;
}

ModeSubspace drop_mode(const ModeSubspace& sub, Eigen::Index k) {
    std::vector<PhaseVector> keep;
    for (Eigen::Index m = 0; m < sub.mode_count(); ++m) {
        if (m != k) keep.push_back(sub.mode_vector(m));
    }
    return ModeSubspace::from_vectors(keep, sub.ambient_modes());
}

}  // namespace

bool VerificationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

void VerificationReport::add(std::string name, double residual, double tolerance) {
    checks.push_back({std::move(name), residual <= tolerance, residual, tolerance});
}

RealMatrix adapted_frame(const GaussianState& state, const ModeSubspace& a) {
    return pt_setup(state, a).frame;
}

VerificationReport verify_uncorrelated_blockform(const GaussianState& state,
                                                 const ModeSubspace& a) {
    VerificationReport report;
    report.add("sigma_offdiagonal_block", blockform_residual(state, a), tol::physical);
    return report;
}

PTSpectrum dense_pt_eigensolve(const GaussianState& state, const ModeSubspace& a) {
    const PtSetup setup = pt_setup(state, a);
    return real_solver_spectrum(setup.sigma_pt, setup.frame);
}

std::vector<double> williamson_values(const RealMatrix& sigma) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(0.5 * (sigma + sigma.transpose()));
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0) {
        throw NumericalDegeneracyError("williamson_values: covariance is not positive definite");
    }
    const RealMatrix root = es.operatorSqrt();
    const auto form = symplectic_form(sigma.rows() / 2);
    const RealMatrix k = root * form.matrix * root;
    Eigen::JacobiSVD<RealMatrix> svd(k);
    std::vector<double> values;
    const auto& sv = svd.singularValues();  // descending, each nu twice
    for (Eigen::Index i = 0; i + 1 < sv.size(); i += 2) {
        if (std::abs(sv(i) - sv(i + 1)) > 1e-7 * std::max(1.0, sv(i))) {
            throw NumericalDegeneracyError("williamson_values: singular values do not pair up");
        }
        values.push_back(0.5 * (sv(i) + sv(i + 1)));
    }
    std::sort(values.begin(), values.end());
    return values;
}

VerificationReport verify_partner(const GaussianState& state, const ModeSubspace& a,
                                  const ModeSubspace& p, PartnerKind kind) {
    VerificationReport report;
    const auto form = state.form;

    if (p.is_empty()) {
        // An empty partner claims A itself is uncorrelated (or PPT).
        if (kind == PartnerKind::entanglement) {
            const auto spectrum = dense_pt_eigensolve(state, a);
            const double min_nu = spectrum.pairs.front().nu;
            report.add("ppt_no_subunity", std::max(0.0, 1.0 - min_nu), tol::subunity);
        } else {
            report.add("a_uncorrelated", blockform_residual(state, a), tol::physical);
        }
        return report;
    }

    double cross = 0.0;
    for (const auto& u : a.basis()) {
        for (const auto& v : p.basis()) {
            cross = std::max(cross, std::abs(symplectic_product(u, v, form)));
        }
    }
    report.add("partner_orthogonal_to_a", cross, tol::equality);

    const ModeSubspace joint = direct_sum(a, p);

    switch (kind) {
        case PartnerKind::pure: {
            report.add("joint_uncorrelated", blockform_residual(state, joint), 1e-8);
            const RealMatrix sj = joint_sigma(state, a, p);
            const auto jform = symplectic_form(sj.rows() / 2);
            const RealMatrix jr = -kHbar * (jform.matrix * sj);
            const double impurity =
                (jr * jr + RealMatrix::Identity(jr.rows(), jr.cols())).norm();
            report.add("joint_pure", impurity, 1e-8);
            break;
        }
        case PartnerKind::correlation: {
            report.add("joint_uncorrelated", blockform_residual(state, joint), 1e-8);

            // Mode-count formula: dim(Pi+ Gamma_A) - N_A.  Pi+ Gamma_A is a
            // direct sum over eigenspaces, so the rank is accumulated per
            // group of (nearly) equal eigenvalues, with the + branch taken
            // from the oracle's own eigensolver.
            const auto plus = real_solver_spectrum(state.covariance, RealMatrix());
            Eigen::Index rank = 0;
            std::size_t lo = 0;
            while (lo < plus.pairs.size()) {
                std::size_t hi = lo + 1;
                while (hi < plus.pairs.size() &&
                       std::abs(plus.pairs[hi].nu - plus.pairs[hi - 1].nu) <=
                           tol::degeneracy_group * std::max(1.0, plus.pairs[hi].nu)) {
                    ++hi;
                }
                ComplexMatrix w(static_cast<Eigen::Index>(hi - lo), a.dim());
                for (std::size_t r = lo; r < hi; ++r) {
                    for (Eigen::Index c = 0; c < a.dim(); ++c) {
                        w(static_cast<Eigen::Index>(r - lo), c) = symplectic_product(
                            plus.pairs[r].vector, a.basis()[static_cast<std::size_t>(c)], form);
                    }
                }
                Eigen::JacobiSVD<ComplexMatrix> svd(w);
                for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
                    if (svd.singularValues()(i) >
                        tol::rank * std::max(1.0, svd.singularValues()(0))) {
                        ++rank;
                    }
                }
                lo = hi;
            }
            const double count_gap =
                std::abs(static_cast<double>(rank - a.mode_count() - p.mode_count()));
            report.add("cp_mode_count_formula", count_gap, 0.5);

            // Minimality on this instance: dropping any single partner mode
            // must leave correlations behind.
            double weakest = std::numeric_limits<double>::infinity();
            for (Eigen::Index k = 0; k < p.mode_count(); ++k) {
                const ModeSubspace smaller = direct_sum(a, drop_mode(p, k));
                weakest = std::min(weakest, blockform_residual(state, smaller));
            }
            if (p.mode_count() > 0) {
                report.add("cp_minimality_drop_one", std::max(0.0, 1e-6 - weakest), 0.0);
            }
            break;
        }
        case PartnerKind::entanglement: {
            const auto global = dense_pt_eigensolve(state, a);
            const RealMatrix sj = joint_sigma(state, a, p);
            RealVector flip = RealVector::Ones(sj.rows());
            for (Eigen::Index k = 0; k < a.mode_count(); ++k) flip(2 * k + 1) = -1.0;
            const RealMatrix sj_pt = flip.asDiagonal() * sj * flip.asDiagonal();
            const auto local = real_solver_spectrum(sj_pt, RealMatrix());

            const auto gv = global.subunity_values();
            const auto lv = local.subunity_values();
            double mismatch = gv.size() == lv.size() ? 0.0 : 1.0;
            for (std::size_t k = 0; mismatch < 1.0 && k < gv.size(); ++k) {
                mismatch = std::max(mismatch, std::abs(gv[k] - lv[k]));
            }
            report.add("subunity_localization", mismatch, 1e-8);

            const auto back = entanglement_partner(p, complex_structure(state));
            if (back.partner.mode_count() == a.mode_count()) {
                report.add("reciprocity", span_distance(back.partner, a), 1e-8);
            } else {
                // Fewer subunity values than modes of A: the return partner
                // is a subset of A.
                const ComplexMatrix residual_map = complement_projector(a);
                double leak = 0.0;
                for (const auto& v : back.partner.basis()) {
                    leak = std::max(leak, (residual_map * v).norm());
                }
                report.add("reciprocity_subset", leak, 1e-8);
            }
            break;
        }
    }
    return report;
}

}  // namespace gpm::oracle
