#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gpm/gaussian_state.hpp"
#include "gpm/oracle.hpp"
#include "gpm/random.hpp"
#include "gpm/tolerances.hpp"

#include "support.hpp"

using namespace gpm;
using gpm::testing::two_mode_squeezed_cov;

TEST_CASE("vacuum complex structure is minus the symplectic block form") {
    const auto state = vacuum_state(1);
    const auto j = complex_structure(state);
    CHECK((j.map + state.form.matrix).norm() == 0.0);
    CHECK((j.map * j.map + RealMatrix::Identity(2, 2)).norm() == 0.0);
}

TEST_CASE("thermal covariance nu*I has symplectic eigenvalue nu") {
    const auto state = state_from_covariance(2.5 * RealMatrix::Identity(2, 2));
    const auto nu = symplectic_spectrum(complex_structure(state)).values();
    REQUIRE(nu.size() == 1);
    CHECK(nu[0] == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("two-mode squeezed covariance is pure") {
    const auto state = state_from_covariance(two_mode_squeezed_cov(0.7));
    const auto j = complex_structure(state);
    // matrix-product oracle for purity
    CHECK((j.map * j.map + RealMatrix::Identity(4, 4)).norm() < 1e-12);
    CHECK(purity(j) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("covariance_of inverts complex_structure") {
    const auto j0 = complex_structure(vacuum_state(1));
    CHECK((covariance_of(j0) - RealMatrix::Identity(2, 2)).norm() == 0.0);

    Rng rng(21);
    for (int trial = 0; trial < 25; ++trial) {
        const auto state = random_physical_state(3, rng);
        const auto j = complex_structure(state);
        const RealMatrix back = covariance_of(j);
        CHECK((back - state.covariance).norm() <=
              1e-12 * std::max(1.0, state.covariance.norm()));
        const auto j2 = complex_structure(state_from_covariance(back));
        CHECK((j2.map - j.map).norm() <= 1e-12 * std::max(1.0, j.map.norm()));
    }

    // single mode with spectrum {2}: sigma = 2*I
    const auto thermal = state_from_spectrum(std::vector<double>{2.0});
    CHECK((thermal.covariance - 2.0 * RealMatrix::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("spectrum of the vacuum and of a mode-wise thermal state") {
    const auto nu_vac = symplectic_spectrum(complex_structure(vacuum_state(3))).values();
    REQUIRE(nu_vac.size() == 3);
    for (double v : nu_vac) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

    RealVector diag(6);
    diag << 2, 2, 2, 2, 3, 3;
    const auto state = state_from_covariance(RealMatrix(diag.asDiagonal()));
    const auto nu = symplectic_spectrum(complex_structure(state)).values();
    REQUIRE(nu.size() == 3);
    CHECK(nu[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(nu[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(nu[2] == doctest::Approx(3.0).epsilon(1e-12));

    // Williamson oracle agreement
    const auto oracle_nu = oracle::williamson_values(state.covariance);
    REQUIRE(oracle_nu.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(nu[k] == doctest::Approx(oracle_nu[k]).epsilon(1e-10));
    }
}

TEST_CASE("spectrum eigenpairs satisfy the eigenvalue equation and normalization") {
    Rng rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        const auto state = random_physical_state(4, rng);
        const auto j = complex_structure(state);
        const auto spectrum = symplectic_spectrum(j);
        REQUIRE(spectrum.pairs.size() == 4);
        for (const auto& p : spectrum.pairs) {
            const PhaseVector residual =
                j.map.cast<Complex>() * p.vector - Complex{0.0, p.nu} * p.vector;
            CHECK(residual.norm() <= 1e-9 * std::max(1.0, j.map.norm()));
            CHECK(std::abs(symplectic_product(p.vector, p.vector, j.form) - 1.0) < 1e-9);
        }
        for (std::size_t a = 0; a < spectrum.pairs.size(); ++a) {
            for (std::size_t b = 0; b < a; ++b) {
                CHECK(std::abs(symplectic_product(spectrum.pairs[a].vector,
                                                  spectrum.pairs[b].vector, j.form)) < 1e-8);
                CHECK(std::abs(symplectic_product(
                          spectrum.pairs[a].vector,
                          spectrum.pairs[b].vector.conjugate(), j.form)) < 1e-8);
            }
        }
    }
}

TEST_CASE("purity follows the spectrum product") {
    CHECK(purity(complex_structure(vacuum_state(2))) == doctest::Approx(1.0).epsilon(1e-12));

    const auto mixed = state_from_spectrum(std::vector<double>{2.0, 3.0});
    CHECK(purity(complex_structure(mixed)) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const auto pure_state = random_pure_state(3, rng);
        CHECK(purity(complex_structure(pure_state)) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("purity lies in (0,1] and saturates exactly for J^2 = -I") {
    Rng rng(24);
    for (int trial = 0; trial < 50; ++trial) {
        const auto state = random_physical_state(3, rng, 1.0, trial % 2 ? 1.0 : 2.5);
        const auto j = complex_structure(state);
        const double p = purity(j);
        CHECK(p > 0.0);
        CHECK(p <= 1.0 + 1e-10);
        const double jj_gap =
            (j.map * j.map + RealMatrix::Identity(j.dim(), j.dim())).cwiseAbs().maxCoeff();
        if (p >= 1.0 - tol::purity) {
            CHECK(jj_gap < 1e-6);
        } else {
            CHECK(jj_gap > 1e-6);
        }
    }
}

TEST_CASE("validate_state reports instead of throwing") {
    const auto squeezed_too_cold = state_from_covariance(0.5 * RealMatrix::Identity(2, 2));
    const auto r1 = validate_state(squeezed_too_cold);
    CHECK(r1.is_symmetric);
    CHECK(r1.is_positive_definite);
    CHECK(r1.min_symplectic_eigenvalue == doctest::Approx(0.5).epsilon(1e-10));
    CHECK_FALSE(r1.is_physical);
    CHECK_FALSE(r1.is_pure);

    const auto r2 = validate_state(vacuum_state(1));
    CHECK(r2.is_physical);
    CHECK(r2.is_pure);

    const auto r3 = validate_state(state_from_covariance(2.0 * RealMatrix::Identity(2, 2)));
    CHECK(r3.is_physical);
    CHECK_FALSE(r3.is_pure);
    CHECK(purity(complex_structure(state_from_covariance(
              2.0 * RealMatrix::Identity(2, 2)))) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("wigner density: peak value, symmetry, vacuum normalization") {
    const auto vac = vacuum_state(1);
    RealVector origin = RealVector::Zero(2);
    CHECK(wigner_density(vac, origin) ==
          doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-12));

    Rng rng(25);
    auto state = random_physical_state(2, rng);
    state.mean << 0.3, -0.4, 1.2, 0.0;
    const double peak = 1.0 / (std::pow(std::numbers::pi, 2.0) *
                               std::sqrt(state.covariance.determinant()));
    CHECK(wigner_density(state, state.mean) == doctest::Approx(peak).epsilon(1e-12));

    RealVector d(4);
    d << 0.1, 0.2, -0.3, 0.4;
    CHECK(wigner_density(state, state.mean + d) ==
          doctest::Approx(wigner_density(state, state.mean - d)).epsilon(1e-12));

    CHECK_THROWS_AS(wigner_density(state, RealVector::Zero(2)), DimensionError);
}

TEST_CASE("state_from_spectrum reproduces the requested spectrum") {
    const auto vac = state_from_spectrum(std::vector<double>{1.0});
    CHECK((vac.covariance - RealMatrix::Identity(2, 2)).norm() < 1e-12);

    // diag(2i,-2i,2i,-2i,3i,-3i) over the canonical eigenbasis
    const auto j6_state = state_from_spectrum(std::vector<double>{2, 2, 3});
    const auto j6 = complex_structure(j6_state);
    const auto basis = annihilation_basis(3);
    const std::vector<double> want{2, 2, 3};
    for (std::size_t k = 0; k < 3; ++k) {
        const PhaseVector residual = j6.map.cast<Complex>() * basis[k] -
                                     Complex{0.0, want[k]} * basis[k];
        CHECK(residual.norm() < 1e-12);
    }

    const auto j8_state = state_from_spectrum(std::vector<double>{2, 2, 3, 4});
    const auto nu8 = symplectic_spectrum(complex_structure(j8_state)).values();
    REQUIRE(nu8.size() == 4);
    CHECK(nu8[3] == doctest::Approx(4.0).epsilon(1e-12));

    // seeded random-basis variant keeps the spectrum and is reproducible
    const auto s1 = state_from_spectrum(std::vector<double>{1.5, 2.5}, std::uint64_t{7});
    const auto s2 = state_from_spectrum(std::vector<double>{1.5, 2.5}, std::uint64_t{7});
    CHECK((s1.covariance - s2.covariance).norm() == 0.0);
    const auto nu = symplectic_spectrum(complex_structure(s1)).values();
    CHECK(nu[0] == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(nu[1] == doctest::Approx(2.5).epsilon(1e-9));

    CHECK_THROWS_AS(state_from_spectrum(std::vector<double>{2.0},
                                        std::vector<PhaseVector>{PhaseVector::Ones(2)}),
                    NonOrthonormalBasisError);
}

TEST_CASE("degenerate covariances are diagnosed, not mangled") {
    RealVector d(2);
    d << 1.0, 0.0;
    const auto degenerate = state_from_covariance(RealMatrix(d.asDiagonal()));
    // J = -Omega*sigma is nilpotent here: the eigen machinery must refuse
    CHECK_THROWS_AS(symplectic_spectrum(complex_structure(degenerate)),
                    NumericalDegeneracyError);
    const auto report = validate_state(degenerate);
    CHECK_FALSE(report.is_positive_definite);
    CHECK_FALSE(report.is_physical);
    CHECK(std::isnan(report.min_symplectic_eigenvalue));
    CHECK_THROWS_AS(wigner_density(degenerate, RealVector::Zero(2)), DegenerateSubspaceError);
}

TEST_CASE("random physical states satisfy the uncertainty bound") {
    Rng rng(26);
    for (int trial = 0; trial < 200; ++trial) {
        const auto state = random_physical_state(2 + trial % 3, rng);
        const auto nu = symplectic_spectrum(complex_structure(state)).values();
        for (double v : nu) CHECK(v >= 1.0 - 1e-9);
    }
}

TEST_CASE("J is anti-Hermitian in the sigma inner product") {
    Rng rng(27);
    const auto state = random_physical_state(3, rng);
    const auto j = complex_structure(state);
    const ComplexMatrix sigma = state.covariance.cast<Complex>();
    const ComplexMatrix jc = j.map.cast<Complex>();
    auto inner = [&](const PhaseVector& u, const PhaseVector& v) {
        return (u.conjugate().transpose() * sigma * v).value();
    };
    for (int trial = 0; trial < 50; ++trial) {
        const PhaseVector g = random_phase_vector(3, rng);
        const PhaseVector d = random_phase_vector(3, rng);
        CHECK(std::abs(inner(g, jc * d) + inner(jc * g, d)) < 1e-9 * j.map.norm());
    }
}

TEST_CASE("Omega(. , J .) is a symmetric bilinear form on real vectors") {
    Rng rng(28);
    const auto state = random_physical_state(3, rng);
    const auto j = complex_structure(state);
    for (int trial = 0; trial < 50; ++trial) {
        const PhaseVector g = random_phase_vector(3, rng).real().cast<Complex>();
        const PhaseVector d = random_phase_vector(3, rng).real().cast<Complex>();
        const Complex lhs = symplectic_bilinear(g, j.map.cast<Complex>() * d);
        const Complex rhs = symplectic_bilinear(d, j.map.cast<Complex>() * g);
        CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, j.map.norm()));
    }
}
