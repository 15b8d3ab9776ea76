#include <doctest.h>

#include <cmath>

#include "atomphase/atom.hpp"
#include "atomphase/potential.hpp"
#include "test_helpers.hpp"

using namespace atomphase;

TEST_CASE("vdw potential follows the 1/z^3 law") {
    const Atom atom = test_helpers::sodium();

    SUBCASE("halving the distance scales the potential by 8") {
        for (double z : {7e-9, 20e-9, 133e-9, 800e-9}) {
            CHECK(vdw_potential(atom, z) / vdw_potential(atom, 2.0 * z) == doctest::Approx(8.0).epsilon(1e-13));
        }
    }

    SUBCASE("sodium-like C3 lands at the known order of magnitude") {
        // C3 = hbar omega0 alpha_v / 8 evaluated independently of the library.
        const double c3_expected = 1.054571817e-34 * 3.20e15 / 8.0 * 24.1e-30;
        CHECK(c3_expected > 0.9e-48);
        CHECK(c3_expected < 1.1e-48);
        const double z = 20e-9;
        CHECK(vdw_potential(atom, z) == doctest::Approx(-c3_expected / (z * z * z)).epsilon(1e-14));
        // ~6.3 meV nm^3 in spectroscopy units.
        const double mev_nm3 = c3_expected / 1.602176634e-19 / 1e-3 * 1e27;
        CHECK(mev_nm3 == doctest::Approx(6.3).epsilon(0.02));
    }

    SUBCASE("vanishes from below at large distance") {
        CHECK(vdw_potential(atom, 1.0) < 0.0);
        CHECK(vdw_potential(atom, 1.0) > -1e-40);
    }

    SUBCASE("V z^3 is flat at machine precision") {
        const double c3 = vdw_c3(atom);
        for (double z = 5e-9; z <= 1e-6; z *= 1.7) {
            const double prod = vdw_potential(atom, z) * z * z * z;
            CHECK(std::fabs(prod + c3) <= 4.0 * std::numeric_limits<double>::epsilon() * c3);
        }
    }

    SUBCASE("nonpositive z is a domain error") {
        CHECK_THROWS_AS(vdw_potential(atom, 0.0), std::domain_error);
        CHECK_THROWS_AS(vdw_potential(atom, -1e-9), std::domain_error);
        CHECK_THROWS_AS(vdw_gradient(atom, 0.0), std::domain_error);
    }
}

TEST_CASE("vdw gradient") {
    const Atom atom = test_helpers::sodium();

    SUBCASE("1/z^4 scaling") {
        CHECK(vdw_gradient(atom, 20e-9) / vdw_gradient(atom, 40e-9) == doctest::Approx(16.0).epsilon(1e-13));
    }

    SUBCASE("matches a central difference of the potential") {
        for (double z = 5e-9; z <= 1e-6; z *= 2.1) {
            const double h = 1e-3 * z;
            const double fd = (vdw_potential(atom, z + h) - vdw_potential(atom, z - h)) / (2.0 * h);
            CHECK(vdw_gradient(atom, z) == doctest::Approx(fd).epsilon(1e-5));
        }
    }

    SUBCASE("positive for all z (attraction toward the plate)") {
        for (double z = 5e-9; z <= 1e-5; z *= 3.0) CHECK(vdw_gradient(atom, z) > 0.0);
    }
}

TEST_CASE("atom construction rejects bad parameters") {
    CHECK_THROWS_AS(Atom(0.0, 24.1e-30, 3.8e-26), std::invalid_argument);
    CHECK_THROWS_AS(Atom(3.2e15, -1e-30, 3.8e-26), std::invalid_argument);
    CHECK_THROWS_AS(Atom(3.2e15, 24.1e-30, 0.0), std::invalid_argument);
}

TEST_CASE("dipole correlation is even and pinned at equal times") {
    const Atom atom = test_helpers::sodium();
    const DipoleCorrelation corr(atom);

    CHECK(corr(0.0) == corr.at_equal_times());
    CHECK(corr.at_equal_times() ==
          doctest::Approx(atom.omega0 * 4.0 * M_PI * si.eps0 * atom.alpha0_volume));
    for (double s : {1e-18, 3.7e-16, 2e-15, 1e-12}) {
        CHECK(corr(s) == corr(-s));  // cos is even; equality is exact
    }
}

TEST_CASE("external potential forms") {
    SUBCASE("none") {
        const ExternalPotential p = ExternalPotential::none();
        CHECK(p.value({1.0, 2.0, 3.0}) == 0.0);
        CHECK(p.gradient_z({1.0, 2.0, 3.0}) == 0.0);
    }

    SUBCASE("linear gravity-like form") {
        const ExternalPotential p = ExternalPotential::linear({0.0, 0.0, 1.0e-25});
        CHECK(p.value({0.0, 0.0, 1.0}) == doctest::Approx(1.0e-25));
        CHECK(p.gradient_z({0.0, 0.0, 1.0}) == doctest::Approx(1.0e-25));
    }

    SUBCASE("harmonic") {
        const ExternalPotential p = ExternalPotential::harmonic({0.0, 0.0, 2.0}, {0.0, 0.0, 0.0});
        CHECK(p.value({0.0, 0.0, 3.0}) == doctest::Approx(9.0));
        CHECK(p.gradient_z({0.0, 0.0, 3.0}) == doctest::Approx(6.0));
        CHECK_THROWS_AS(ExternalPotential::harmonic({-1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}),
                        std::invalid_argument);
    }
}
