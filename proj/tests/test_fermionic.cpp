#include <doctest.h>

#include <cmath>

#include "gpm/fermionic.hpp"
#include "gpm/random.hpp"

using namespace gpm;

namespace {

RealMatrix rotation_mixing_two_modes(double theta) {
    // orthogonal map mixing x1 with x2 only; does not commute with the
    // decoupled two-form, so the rotated state pairs the two modes
    RealMatrix r = RealMatrix::Identity(4, 4);
    const double c = std::cos(theta), s = std::sin(theta);
    r(0, 0) = c;
    r(0, 2) = s;
    r(2, 0) = -s;
    r(2, 2) = c;
    return r;
}

RealMatrix random_orthogonal(Eigen::Index dim, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    RealMatrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = gauss(rng);
    }
    const Eigen::HouseholderQR<RealMatrix> qr(m);
    return qr.householderQ();
}

ModeSubspace fermionic_mode(Eigen::Index n_modes, Eigen::Index mode) {
    RealVector x = RealVector::Zero(2 * n_modes);
    x(2 * mode) = 1.0;
    RealVector p = RealVector::Zero(2 * n_modes);
    p(2 * mode + 1) = 1.0;
    return ModeSubspace::fermionic_from_vectors({x, p}, n_modes);
}

}  // namespace

TEST_CASE("fermionic vacuum complex structure") {
    const auto state = fermionic_vacuum(1);
    const auto j = fermionic_complex_structure(state);
    CHECK((j.map + state.omega).norm() == 0.0);
    CHECK((j.map * j.map + RealMatrix::Identity(2, 2)).norm() < 1e-12);

    // two decoupled modes: block-diagonal J
    const auto two = fermionic_vacuum(2);
    const auto j2 = fermionic_complex_structure(two);
    CHECK(j2.map.block(0, 2, 2, 2).norm() == 0.0);
}

TEST_CASE("rotated vacuum two-forms stay pure, degenerate ones are rejected") {
    Rng rng(61);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index n = 2 + trial % 3;
        const RealMatrix r = random_orthogonal(2 * n, rng);
        const RealMatrix omega = r * symplectic_form(n).matrix * r.transpose();
        const auto j = fermionic_complex_structure(fermionic_state(omega));
        CHECK((j.map * j.map + RealMatrix::Identity(2 * n, 2 * n)).norm() < 1e-9);
        // g-antisymmetry of J
        CHECK((j.map + j.map.transpose()).norm() < 1e-9);
    }

    CHECK_THROWS_AS(fermionic_complex_structure(
                        fermionic_state(2.0 * symplectic_form(1).matrix)),
                    WrongPurityError);
    CHECK_THROWS_AS(fermionic_state(RealMatrix::Identity(2, 2)), DimensionError);
}

TEST_CASE("fermionic projector is orthogonal (symmetric idempotent)") {
    const auto a = fermionic_mode(2, 0);
    const RealMatrix pi = fermionic_projector(a);
    CHECK((pi - pi.transpose()).norm() < 1e-12);
    CHECK((pi * pi - pi).norm() < 1e-12);
    CHECK(pi.trace() == doctest::Approx(2.0));
}

TEST_CASE("partner of a mode in a paired two-mode state is the other mode") {
    const auto omega = [&] {
        const RealMatrix r = rotation_mixing_two_modes(0.6);
        return RealMatrix(r * symplectic_form(2).matrix * r.transpose());
    }();
    const auto j = fermionic_complex_structure(fermionic_state(omega));
    const auto a = fermionic_mode(2, 0);

    const auto partner = fermionic_partner(a, j);
    REQUIRE_FALSE(partner.is_empty());
    CHECK(partner.dim() == 2);
    CHECK(span_distance(partner, fermionic_mode(2, 1)) < 1e-10);

    // g-orthogonality between A and its partner
    for (const auto& u : a.basis()) {
        for (const auto& v : partner.basis()) {
            CHECK(std::abs(u.real().dot(v.real())) < 1e-10);
        }
    }
}

TEST_CASE("uncorrelated fermionic modes give an empty partner") {
    const auto j = fermionic_complex_structure(fermionic_vacuum(2));
    const auto partner = fermionic_partner(fermionic_mode(2, 0), j);
    CHECK(partner.is_empty());
}

TEST_CASE("fermionic partner invariance and involution on random pure states") {
    Rng rng(62);
    int correlated = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index n = 2 + trial % 3;
        const RealMatrix r = random_orthogonal(2 * n, rng);
        const RealMatrix omega = r * symplectic_form(n).matrix * r.transpose();
        const auto j = fermionic_complex_structure(fermionic_state(omega));
        const auto a = fermionic_mode(n, 0);

        const auto partner = fermionic_partner(a, j);
        if (partner.is_empty()) continue;
        ++correlated;

        // J leaves A (+) partner invariant
        RealMatrix joint = fermionic_projector(a) + fermionic_projector(partner);
        const RealMatrix outside = RealMatrix::Identity(2 * n, 2 * n) - joint;
        double leak = 0.0;
        for (const auto& v : a.basis()) {
            leak = std::max(leak, (outside * (j.map * v.real())).norm());
        }
        for (const auto& v : partner.basis()) {
            leak = std::max(leak, (outside * (j.map * v.real())).norm());
        }
        CHECK(leak < 1e-9);

        // involution when the partner is a single mode
        if (partner.dim() == 2) {
            const auto back = fermionic_partner(partner, j);
            REQUIRE_FALSE(back.is_empty());
            CHECK(span_distance(back, a) < 1e-8);
        }
    }
    CHECK(correlated > 25);
}

TEST_CASE("bosonic operations reject fermionic subspaces and vice versa") {
    const auto fa = fermionic_mode(2, 0);
    const auto j = complex_structure(vacuum_state(2));
    CHECK_THROWS_AS(symplectic_projector(fa), DimensionError);
    CHECK_THROWS_AS(is_uncorrelated(fa, j), DimensionError);

    const auto ba = ModeSubspace::canonical_modes(2, {0});
    const auto fj = fermionic_complex_structure(fermionic_vacuum(2));
    CHECK_THROWS_AS(fermionic_partner(ba, fj), DimensionError);
    CHECK_THROWS_AS(fermionic_projector(ba), DimensionError);
}
