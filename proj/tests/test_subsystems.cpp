#include <doctest.h>

#include <cmath>

#include "gpm/oracle.hpp"
#include "gpm/random.hpp"
#include "gpm/subsystems.hpp"

#include "support.hpp"

using namespace gpm;
using gpm::testing::eigen_combo;
using gpm::testing::span_of;

namespace {
const double s3 = std::sqrt(3.0);
}

TEST_CASE("gram matrix of normalized pairs and of annihilation modes") {
    const auto form = symplectic_form(3);

    const PhaseVector gamma = eigen_combo(3, {{1, 2.0}, {-3, -s3}});
    CHECK(std::abs(symplectic_product(gamma, gamma, form) - 1.0) < 1e-12);

    const ComplexMatrix g2 = gram_matrix({gamma, gamma.conjugate()}, form);
    CHECK(std::abs(g2(0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(g2(1, 1) + 1.0) < 1e-12);
    CHECK(std::abs(g2(0, 1)) < 1e-12);

    const auto e = annihilation_basis(3);
    const ComplexMatrix g3 = gram_matrix({e[0], e[1]}, form);
    CHECK((g3 - ComplexMatrix::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("symplectic projector matches its rank-one expansion") {
    const Eigen::Index n = 3;
    const auto form = symplectic_form(n);
    const PhaseVector gamma = eigen_combo(n, {{1, 2.0}, {-3, -s3}});
    const auto a = ModeSubspace::from_vectors({gamma}, n);
    const auto pi = symplectic_projector(a);

    // gamma <gamma, .> - conj(gamma) <conj(gamma), .>
    ComplexMatrix expected = gamma * product_row(gamma, form) -
                             gamma.conjugate() * product_row(gamma.conjugate(), form);
    CHECK((pi.matrix - expected).norm() < 1e-10);

    CHECK((pi.matrix * pi.matrix - pi.matrix).norm() < 1e-10);
    CHECK((pi.matrix * gamma - gamma).norm() < 1e-10);

    // e_2 lies in the symplectic complement of A
    const PhaseVector e2 = annihilation_vector(n, 1);
    CHECK((pi.matrix * e2).norm() < 1e-10);

    const auto full = symplectic_projector(ModeSubspace::full(n));
    CHECK((full.matrix - ComplexMatrix::Identity(2 * n, 2 * n)).norm() < 1e-10);
}

TEST_CASE("projector idempotence and image on random subspaces") {
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index n = 3 + trial % 3;
        const Eigen::Index m = 1 + trial % 2;
        const auto sub = random_subspace(n, m, rng);
        const auto pi = symplectic_projector(sub).matrix;
        CHECK((pi * pi - pi).norm() < 1e-9 * std::max(1.0, pi.norm()));
        for (const auto& v : sub.basis()) {
            CHECK((pi * v - v).norm() < 1e-8);
        }
        // projector is a real map
        CHECK(pi.imag().norm() < 1e-9 * std::max(1.0, pi.norm()));
    }
}

TEST_CASE("symplectic complement") {
    const auto a = ModeSubspace::canonical_modes(2, {0});
    const auto comp = symplectic_complement(a);
    CHECK(comp.mode_count() == 1);
    CHECK(span_distance(comp, ModeSubspace::canonical_modes(2, {1})) < 1e-10);

    Rng rng(32);
    for (int trial = 0; trial < 20; ++trial) {
        const auto sub = random_subspace(3, 1, rng);
        const auto cc = symplectic_complement(symplectic_complement(sub));
        CHECK(span_distance(cc, sub) < 1e-9);
    }
    // and exactly on a canonical mode
    const auto canonical = ModeSubspace::canonical_modes(3, {2});
    CHECK(span_distance(symplectic_complement(symplectic_complement(canonical)), canonical) <
          1e-10);

    const auto big = random_subspace(3, 1, rng);
    CHECK(symplectic_complement(big).dim() == 4);
}

TEST_CASE("symplectic orthonormalization rescales, deduplicates and normalizes") {
    const Eigen::Index n = 3;
    const auto e1 = annihilation_vector(n, 0);

    const auto rescaled = symplectic_gram_schmidt({2.0 * e1, 2.0 * e1.conjugate()}, n);
    CHECK(rescaled.mode_count() == 1);
    CHECK(span_distance(rescaled, ModeSubspace::canonical_modes(n, {0})) < 1e-12);

    Rng rng(33);
    const PhaseVector g = random_phase_vector(n, rng);
    const auto dedup = symplectic_gram_schmidt({g, g.conjugate(), 2.0 * g, 2.0 * g.conjugate()}, n);
    CHECK(dedup.mode_count() == 1);
    CHECK(span_distance(dedup, ModeSubspace::from_vectors({g}, n)) < 1e-9);

    // the positive-norm representative of span{sqrt3 e1 + 2 e3*} is the conjugate
    const auto form = symplectic_form(n);
    const PhaseVector w = eigen_combo(n, {{1, s3}, {-3, 2.0}});
    CHECK(std::abs(symplectic_product(w, w, form) + 1.0) < 1e-12);
    const auto sub = symplectic_gram_schmidt({w}, n);
    REQUIRE(sub.mode_count() == 1);
    const ComplexMatrix gram = gram_matrix(sub.basis(), form);
    CHECK(std::abs(gram(0, 0) - 1.0) < 1e-9);
    CHECK(std::abs(gram(1, 1) + 1.0) < 1e-9);
    // gamma_1 is parallel to the conjugate vector sqrt3 e1* + 2 e3
    const PhaseVector rep = sub.mode_vector(0);
    const Complex overlap = symplectic_product(w.conjugate(), rep, form);
    CHECK(std::abs(std::abs(overlap) - std::abs(symplectic_product(w, w, form))) < 1e-9);

    // a real line is not symplectic
    PhaseVector x = PhaseVector::Zero(2 * n);
    x(0) = 1.0;
    CHECK_THROWS_AS(symplectic_gram_schmidt({x}, n), DegenerateSubspaceError);
    // an isotropic direction is not symplectic either
    CHECK_THROWS_AS(symplectic_gram_schmidt({eigen_combo(n, {{1, 1.0}, {-2, 1.0}})}, n),
                    DegenerateSubspaceError);
}

TEST_CASE("orthonormalized bases have the standard Gram matrix") {
    Rng rng(34);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index n = 3 + trial % 2;
        const auto sub = random_subspace(n, 1 + trial % 2, rng);
        const auto form = symplectic_form(n);
        const ComplexMatrix gram = gram_matrix(sub.basis(), form);
        ComplexMatrix want = ComplexMatrix::Zero(sub.dim(), sub.dim());
        const Eigen::Index m = sub.mode_count();
        want.topLeftCorner(m, m).setIdentity();
        want.bottomRightCorner(m, m) = -ComplexMatrix::Identity(m, m);
        CHECK((gram - want).norm() < 1e-9);
    }
}

TEST_CASE("a Darboux pair of real vectors normalizes to its annihilation mode") {
    PhaseVector x = PhaseVector::Zero(4);
    x(0) = 1.0;
    PhaseVector p = PhaseVector::Zero(4);
    p(1) = 1.0;
    const auto sub = symplectic_gram_schmidt({x, p}, 2);
    CHECK(sub.mode_count() == 1);
    CHECK(span_distance(sub, ModeSubspace::canonical_modes(2, {0})) < 1e-12);
}

TEST_CASE("restriction of J to subspaces") {
    const auto pure3 = complex_structure(state_from_spectrum(std::vector<double>{1, 1, 1}));

    SUBCASE("uncorrelated single mode in a pure state restricts to a complex structure") {
        const auto a = ModeSubspace::canonical_modes(3, {1});
        const ComplexMatrix ja = restrict_map(pure3, a);
        CHECK((ja * ja + ComplexMatrix::Identity(2, 2)).norm() < 1e-10);
    }

    SUBCASE("restriction to the full canonical space is the identity operation") {
        const auto full = ModeSubspace::full(3);
        const auto restricted = restricted_structure(pure3, full);
        CHECK((restricted.map - pure3.map).norm() < 1e-10);
    }

    SUBCASE("two squeezed directions in the 4-mode pure state") {
        const auto pure4 = complex_structure(state_from_spectrum(std::vector<double>{1, 1, 1, 1}));
        const auto a = ModeSubspace::from_vectors({eigen_combo(4, {{1, 2.0}, {-3, -s3}}),
                                                   eigen_combo(4, {{2, 2.0}, {-4, -s3}})},
                                                  4);
        const auto nu = symplectic_spectrum(restricted_structure(pure4, a)).values();
        REQUIRE(nu.size() == 2);
        CHECK(nu[0] == doctest::Approx(7.0).epsilon(1e-10));
        CHECK(nu[1] == doctest::Approx(7.0).epsilon(1e-10));
    }

    SUBCASE("one correlated and one uncorrelated direction") {
        const auto pure4 = complex_structure(state_from_spectrum(std::vector<double>{1, 1, 1, 1}));
        const double s5 = std::sqrt(5.0);
        const auto a = ModeSubspace::from_vectors(
            {eigen_combo(4, {{1, 2.0}, {-3, -s3}}),
             eigen_combo(4, {{-1, -2.0 * s3 / s5}, {2, 1.0 / s5}, {3, 4.0 / s5}})},
            4);
        const auto nu = symplectic_spectrum(restricted_structure(pure4, a)).values();
        REQUIRE(nu.size() == 2);
        // frozen from the covariance-block evaluation of the reduced state:
        // nu = (1, 11/5) exactly
        CHECK(nu[0] == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(nu[1] == doctest::Approx(2.2).epsilon(1e-9));
    }
}

TEST_CASE("reduced state covariance matches direct quadrature moments") {
    // A = the squeezed direction 2e1 - sqrt3 e3* inside the 3-mode vacuum;
    // its reduced state is thermal with nu = 7.
    const auto state = state_from_spectrum(std::vector<double>{1, 1, 1});
    const auto a = span_of(3, {{1, 2.0}, {-3, -s3}});
    const auto reduced = reduced_state(state, a);
    const auto nu = symplectic_spectrum(complex_structure(reduced)).values();
    REQUIRE(nu.size() == 1);
    CHECK(nu[0] == doctest::Approx(7.0).epsilon(1e-10));
}

TEST_CASE("restricted spectra agree with the reduced-state Williamson route") {
    Rng rng(36);
    for (int trial = 0; trial < 30; ++trial) {
        const Eigen::Index n = 3 + trial % 3;
        const auto state = random_physical_state(n, rng, 1.0, 2.5);
        const auto sub = random_subspace(n, 1 + trial % 2, rng);
        const auto direct =
            symplectic_spectrum(restricted_structure(complex_structure(state), sub)).values();
        const auto via_reduced = oracle::williamson_values(reduced_state(state, sub).covariance);
        REQUIRE(direct.size() == via_reduced.size());
        for (std::size_t k = 0; k < direct.size(); ++k) {
            CHECK(std::abs(direct[k] - via_reduced[k]) < 1e-9 * std::max(1.0, direct[k]));
        }
    }
}

TEST_CASE("uncorrelated test agrees with the covariance block-form oracle") {
    const auto j6_state = state_from_spectrum(std::vector<double>{2, 2, 3});
    const auto j6 = complex_structure(j6_state);

    const auto sum_mode = span_of(3, {{1, 1.0}, {2, 1.0}});
    CHECK(is_uncorrelated(sum_mode, j6).uncorrelated);
    CHECK(oracle::verify_uncorrelated_blockform(j6_state, sum_mode).all_passed());

    const auto cross_group = span_of(3, {{1, 1.0}, {3, 1.0}});
    CHECK_FALSE(is_uncorrelated(cross_group, j6).uncorrelated);
    CHECK_FALSE(oracle::verify_uncorrelated_blockform(j6_state, cross_group).all_passed());

    for (Eigen::Index k = 0; k < 3; ++k) {
        CHECK(is_uncorrelated(ModeSubspace::canonical_modes(3, {k}), j6).uncorrelated);
    }

    // random product states vs randomly rotated ones
    Rng rng(35);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index n = 3 + trial % 2;
        const bool product = trial % 2 == 0;
        GaussianState state = product
                                  ? state_from_spectrum([&] {
                                        std::vector<double> nu;
                                        for (Eigen::Index k = 0; k < n; ++k) {
                                            nu.push_back(1.0 + (trial % 5) * 0.5);
                                        }
                                        return nu;
                                    }())
                                  : random_physical_state(n, rng);
        const auto j = complex_structure(state);
        const auto a = product ? ModeSubspace::canonical_modes(n, {trial % n})
                               : random_subspace(n, 1, rng);
        const bool main_says = is_uncorrelated(a, j).uncorrelated;
        const bool oracle_says = oracle::verify_uncorrelated_blockform(state, a).all_passed();
        CHECK(main_says == oracle_says);
        if (product) CHECK(main_says);
    }
}

TEST_CASE("correlation block vanishes exactly for product states") {
    RealMatrix sigma = RealMatrix::Zero(4, 4);
    sigma.topLeftCorner(2, 2) = 1.5 * RealMatrix::Identity(2, 2);
    sigma.bottomRightCorner(2, 2) = 2.5 * RealMatrix::Identity(2, 2);
    const auto state = state_from_covariance(sigma);
    const auto a = ModeSubspace::canonical_modes(2, {0});
    const auto b = ModeSubspace::canonical_modes(2, {1});
    CHECK(correlation_block(state, a, b).norm() < 1e-12);

    // correlated split in the J6 state: block against the correlation partner
    const auto j6_state = state_from_spectrum(std::vector<double>{2, 2, 3});
    const auto corr = span_of(3, {{1, 1.0}, {3, 1.0}});
    const auto partner = span_of(3, {{1, 1.0}, {3, -1.0}});
    CHECK(correlation_block(j6_state, corr, partner).norm() > 0.1);

    // uncorrelated mode against its complement
    const auto sum_mode = span_of(3, {{1, 1.0}, {2, 1.0}});
    const auto rest = symplectic_complement(sum_mode);
    CHECK(correlation_block(j6_state, sum_mode, rest).norm() < 1e-10);

    CHECK_THROWS_AS(correlation_block(j6_state, corr, corr), DimensionError);
}
