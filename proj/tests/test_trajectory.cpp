#include <doctest.h>

#include <cmath>

#include "atomphase/trajectory.hpp"
#include "test_helpers.hpp"

using namespace atomphase;

namespace {

PrimitiveOptions opts(double domain_end, int label = 0) {
    PrimitiveOptions o;
    o.domain_end = domain_end;
    o.label = label;
    return o;
}

}  // namespace

TEST_CASE("primitive paths evaluate to their closed forms") {
    SUBCASE("static") {
        const Trajectory tr = make_static_path(20e-9, opts(1e-6));
        for (double t : {0.0, 3.3e-7, 1e-6}) {
            CHECK(tr.z(t) == 20e-9);
            CHECK(tr.zdot(t) == 0.0);
        }
    }

    SUBCASE("linear") {
        const Trajectory tr = make_linear_path(20e-9, 1.0, opts(2e-8));
        CHECK(tr.z(10e-9) == doctest::Approx(30e-9).epsilon(1e-14));
        CHECK(tr.zdot(1.7e-8) == 1.0);
    }

    SUBCASE("ballistic") {
        const Trajectory tr = make_ballistic_path(100e-9, 0.0, 9.81, opts(1e-6));
        CHECK(tr.z(1e-6) == doctest::Approx(100e-9 - 4.905e-12).epsilon(1e-12));
        CHECK(tr.zdot(1e-6) == doctest::Approx(-9.81e-6).epsilon(1e-12));
        CHECK(tr.zddot(0.5e-6) == doctest::Approx(-9.81).epsilon(1e-14));
    }

    SUBCASE("cubic segment calculus") {
        // z = t^3 on [0, 1]: zddot(0.5) = 3.
        Trajectory tr({{0.0, 1.0, {1.0, 0.0, 0.0, 1.0}}}, 0.0, 0.0, 0, {1e-10, 1e7});
        CHECK(tr.zddot(0.5) == doctest::Approx(3.0).epsilon(1e-14));
        CHECK(tr.zdot(0.5) == doctest::Approx(0.75).epsilon(1e-14));
    }
}

TEST_CASE("evaluation outside the domain is an error") {
    const Trajectory tr = make_static_path(20e-9, opts(1e-6));
    CHECK_THROWS_AS(tr.z(-1e-7), std::domain_error);
    CHECK_THROWS_AS(tr.z(1.1e-6), std::domain_error);
}

TEST_CASE("sinusoidal primitive") {
    const double z0 = 60e-9, A = 20e-9, omega = 2.0 * M_PI / 1e-7, phi0 = 0.4;
    const Trajectory tr = make_sinusoidal_path(z0, A, omega, phi0, opts(3.1e-7));

    SUBCASE("interpolation error stays below 1e-8 of the amplitude") {
        double worst_z = 0.0, worst_v = 0.0;
        for (int i = 0; i <= 20000; ++i) {
            const double t = 3.1e-7 * i / 20000;
            worst_z = std::max(worst_z, std::fabs(tr.z(t) - (z0 + A * std::sin(omega * t + phi0))));
            worst_v = std::max(worst_v, std::fabs(tr.zdot(t) - A * omega * std::cos(omega * t + phi0)));
        }
        CHECK(worst_z / A <= 1e-8);
        CHECK(worst_v / (A * omega) <= 1e-6);
    }

    SUBCASE("z and zdot are continuous across every joint") {
        const auto& segs = tr.segments();
        const double v_scale = tr.max_abs_zdot();
        for (size_t i = 0; i + 1 < segs.size(); ++i) {
            const double zl = segs[i].z(segs[i].t1 - segs[i].t0);
            const double zr = segs[i + 1].z(0.0);
            CHECK(std::fabs(zl - zr) <= 1e-12 * std::fabs(zr));
            const double vl = segs[i].zdot(segs[i].t1 - segs[i].t0);
            const double vr = segs[i + 1].zdot(0.0);
            CHECK(std::fabs(vl - vr) <= 1e-12 * v_scale + 1e-30);
        }
    }

    SUBCASE("too few nodes per period is rejected") {
        CHECK_THROWS_AS(make_sinusoidal_path(z0, A, omega, phi0, opts(3.1e-7), 20),
                        std::invalid_argument);
    }
}

TEST_CASE("stable increment agrees with direct differences and beats them at tiny dt") {
    const Trajectory tr = make_sinusoidal_path(60e-9, 20e-9, 2.0 * M_PI / 1e-7, 0.0, opts(3.1e-7));

    SUBCASE("matches direct difference at moderate dt") {
        for (double t : {1e-8, 7.3e-8, 2.0e-7}) {
            const double dt = 3e-9;
            const double direct = tr.z(t + dt) - tr.z(t);
            CHECK(tr.z_increment(t, dt) == doctest::Approx(direct).epsilon(1e-9));
        }
    }

    SUBCASE("keeps relative precision at light-cone scale dt") {
        // dt ~ 4e-16 s: direct subtraction keeps ~7 digits here, the
        // increment form must agree with the analytic slope to ~1e-12.
        const double t = 8.7e-8, dt = 4e-16;
        const double inc = tr.z_increment(t, dt);
        const double expected = tr.zdot(t) * dt + 0.5 * tr.zddot(t) * dt * dt;
        CHECK(inc == doctest::Approx(expected).epsilon(1e-12));
    }

    SUBCASE("zero for static paths, exactly") {
        const Trajectory st = make_static_path(20e-9, opts(1e-6));
        CHECK(st.z_increment(3e-7, 1.5e-16) == 0.0);
    }

    SUBCASE("additive across a segment boundary") {
        const auto& segs = tr.segments();
        const double tb = segs[4].t1;
        const double t = tb - 1e-10, dt = 2e-10;  // straddles the joint
        const double expected = tr.z(t + dt) - tr.z(t);
        CHECK(tr.z_increment(t, dt) == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("construction enforces clearance and velocity bounds") {
    SUBCASE("linear path dipping under the plate clearance") {
        CHECK_THROWS_AS(make_linear_path(20e-9, -1.0, opts(3e-8)), std::domain_error);
    }

    SUBCASE("interior parabola minimum is found analytically") {
        // Endpoints sit at 6 nm but the vertex dips to 1 nm.
        CHECK_THROWS_AS(make_ballistic_path(6e-9, -1e-2, -1e4, opts(2e-6)), std::domain_error);
    }

    SUBCASE("velocity bound") {
        CHECK_THROWS_AS(make_linear_path(1.0, 0.02 * si.c, opts(1e-9)), std::domain_error);
        PrimitiveOptions o = opts(1e-6);
        CHECK_THROWS_AS(make_static_path(20e-9, [&] {
                            o.parallel_velocity = 0.02 * si.c;
                            return o;
                        }()),
                        std::domain_error);
    }

    SUBCASE("malformed segment lists") {
        CHECK_THROWS_AS(Trajectory({}, 0.0, 0.0, 0, {}), std::invalid_argument);
        CHECK_THROWS_AS(Trajectory({{0.0, 1e-6, {20e-9, 0, 0, 0}}, {2e-6, 3e-6, {20e-9, 0, 0, 0}}},
                                   0.0, 0.0, 0, {}),
                        std::invalid_argument);
        // z jumps at the joint
        CHECK_THROWS_AS(Trajectory({{0.0, 1e-6, {20e-9, 0, 0, 0}}, {1e-6, 2e-6, {30e-9, 0, 0, 0}}},
                                   0.0, 0.0, 0, {}),
                        std::invalid_argument);
    }
}

TEST_CASE("equations-of-motion residual") {
    const Atom atom = test_helpers::sodium();
    const double g0 = 9.81;
    const ExternalPotential gravity = ExternalPotential::linear({0.0, 0.0, atom.mass * g0});

    SUBCASE("ballistic arc under the matching gravity potential") {
        const Trajectory tr = make_ballistic_path(100e-9, 0.0, g0, opts(1e-6));
        CHECK(validate_eom(tr, atom, gravity, 1e-6) <= 1e-12);
    }

    SUBCASE("static path with no potential") {
        const Trajectory tr = make_static_path(20e-9, opts(1e-6));
        CHECK(validate_eom(tr, atom, ExternalPotential::none(), 1e-6) == 0.0);
    }

    SUBCASE("constant-velocity path under gravity is flagged") {
        const Trajectory tr = make_linear_path(100e-9, 0.01, opts(1e-6));
        CHECK(validate_eom(tr, atom, gravity, 1e-6) >= 0.5);
    }
}

TEST_CASE("acceleration bound check") {
    SUBCASE("static path passes with ratio zero") {
        const AccelerationBound b = check_acceleration_bound(make_static_path(20e-9, opts(1e-6)));
        CHECK(b.ok);
        CHECK(b.worst_ratio == 0.0);
    }

    SUBCASE("zddot = 1e10 at 20 nm passes comfortably") {
        // Domain kept tiny so z stays at 20 nm while zddot is huge.
        Trajectory tr({{0.0, 1e-12, {20e-9, 0.0, 5e9, 0.0}}}, 0.0, 0.0, 0, {});
        const AccelerationBound b = check_acceleration_bound(tr);
        CHECK(b.ok);
        CHECK(b.worst_ratio == doctest::Approx(1e10 * 20e-9 / (si.c * si.c)).epsilon(1e-3));
    }

    SUBCASE("zddot ~ c^2/z at 20 nm fails") {
        Trajectory tr({{0.0, 1e-19, {20e-9, 0.0, 2.5e24, 0.0}}}, 0.0, 0.0, 0, {});
        const AccelerationBound b = check_acceleration_bound(tr);
        CHECK_FALSE(b.ok);
        CHECK(b.worst_ratio == doctest::Approx(5e24 * 20e-9 / (si.c * si.c)).epsilon(1e-3));
    }
}

TEST_CASE("time dilatation maps the path onto itself at rescaled times") {
    const Trajectory tr = make_linear_path(20e-9, 0.02, opts(1e-6));
    const Trajectory dl = dilate_trajectory(tr, 2.0, 0.5e-6 + 1e-14);
    for (double t : {0.0, 1e-7, 4.9e-7}) {
        CHECK(dl.z(t) == doctest::Approx(tr.z(2.0 * t)).epsilon(1e-14));
        CHECK(dl.zdot(t) == doctest::Approx(2.0 * tr.zdot(2.0 * t)).epsilon(1e-14));
    }
    CHECK(dl.t_end() >= 0.5e-6 + 1e-14);
}
