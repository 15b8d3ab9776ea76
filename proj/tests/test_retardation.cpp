#include <doctest.h>

#include <cmath>
#include <random>

#include "atomphase/retardation.hpp"
#include "test_helpers.hpp"

using namespace atomphase;

namespace {

PrimitiveOptions opts(double domain_end, double v_par = 0.0, double x0 = 0.0) {
    PrimitiveOptions o;
    o.domain_end = domain_end;
    o.parallel_velocity = v_par;
    o.parallel_origin = x0;
    return o;
}

double image_distance(const Trajectory& src, const Trajectory& obs, double t, double tau) {
    const double dx = obs.x(t + tau) - src.x(t);
    const double sz = src.z(t) + obs.z(t + tau);
    return std::sqrt(dx * dx + sz * sz);
}

}  // namespace

TEST_CASE("self delay: static path") {
    const double z0 = 20e-9;
    const Trajectory tr = make_static_path(z0, opts(1e-6));
    const DelaySolution sol = roundtrip_delay_self(tr, 3e-7);
    CHECK(sol.tau == doctest::Approx(2.0 * z0 / si.c).epsilon(1e-14));
    CHECK(sol.mean_distance == doctest::Approx(z0).epsilon(1e-15));
    CHECK(sol.tau == doctest::Approx(1.334e-16).epsilon(1e-3));
}

TEST_CASE("self delay: linear vertical motion has the closed form 2z/(c - v)") {
    const double z0 = 20e-9, v = 1e5;
    const Trajectory tr = make_linear_path(z0, v, opts(1e-12));
    for (double t : {0.0, 3e-13, 9e-13}) {
        const DelaySolution sol = roundtrip_delay_self(tr, t);
        const double expected = 2.0 * tr.z(t) / (si.c - v);
        CHECK(sol.tau == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("self delay: parallel drift enters at second order") {
    const double z0 = 20e-9, v_par = 1e3;
    const Trajectory still = make_static_path(z0, opts(1e-9));
    const Trajectory drifting = make_static_path(z0, opts(1e-9, v_par));

    const double tau0 = roundtrip_delay_self(still, 5e-10).tau;
    const double tau1 = roundtrip_delay_self(drifting, 5e-10).tau;

    // Exact: tau = 2 z0 / sqrt(c^2 - v_par^2).
    const double expected = 2.0 * z0 / std::sqrt(si.c * si.c - v_par * v_par);
    CHECK(tau1 == doctest::Approx(expected).epsilon(1e-13));

    const double rel_shift = (tau1 - tau0) / tau0;
    const double beta2 = 0.5 * (v_par / si.c) * (v_par / si.c);
    CHECK(rel_shift == doctest::Approx(beta2).epsilon(0.05));
    CHECK(rel_shift < 1e-10);  // O(1e-11) for v_par = 1e3 m/s
}

TEST_CASE("pair delay geometry") {
    const double zj = 20e-9, zk = 50e-9;
    const Trajectory tj = make_static_path(zj, opts(1e-9));
    const Trajectory tk = make_static_path(zk, opts(1e-9));

    SUBCASE("static pair: tau = (z_j + z_k)/c") {
        const DelaySolution sol = roundtrip_delay_pair(tj, tk, 2e-10);
        CHECK(sol.tau == doctest::Approx((zj + zk) / si.c).epsilon(1e-14));
        CHECK(sol.mean_distance == doctest::Approx(0.5 * (zj + zk)).epsilon(1e-15));
    }

    SUBCASE("degenerate pair reproduces the self delay") {
        const DelaySolution self = roundtrip_delay_self(tj, 2e-10);
        const DelaySolution pair = roundtrip_delay_pair(tj, tj, 2e-10);
        CHECK(pair.tau == self.tau);
        CHECK(pair.mean_distance == self.mean_distance);
    }

    SUBCASE("lateral offset: Euclidean image distance") {
        const double dx = 40e-9;
        const Trajectory tk_off = make_static_path(zk, opts(1e-9, 0.0, dx));
        const DelaySolution sol = roundtrip_delay_pair(tj, tk_off, 2e-10);
        const double expected = std::sqrt((zj + zk) * (zj + zk) + dx * dx) / si.c;
        CHECK(sol.tau == doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("light-cone residual stays at solver precision") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> zdist(40e-9, 80e-9);
    std::uniform_real_distribution<double> vdist(-2e4, 2e4);
    std::uniform_real_distribution<double> tdist(0.0, 5e-13);

    for (int trial = 0; trial < 50; ++trial) {
        const Trajectory src = make_linear_path(zdist(rng), vdist(rng), opts(1e-12));
        const Trajectory obs = make_linear_path(zdist(rng), vdist(rng), opts(1e-12));
        const double t = tdist(rng);

        const DelaySolution sol = roundtrip_delay_pair(src, obs, t);
        const double resid = std::fabs(si.c * sol.tau - image_distance(src, obs, t, sol.tau));
        CHECK(resid <= 1e-14 * si.c * sol.tau);
    }
}

TEST_CASE("delay tends to 2z/c with deviation linear in zdot/c") {
    const double z0 = 20e-9;
    double prev_dev = 0.0;
    for (double v : {4e4, 2e4, 1e4}) {
        const Trajectory tr = make_linear_path(z0, v, opts(1e-12));
        const double tau = roundtrip_delay_self(tr, 0.0).tau;
        const double dev = std::fabs(tau - 2.0 * z0 / si.c) / (2.0 * z0 / si.c);
        CHECK(dev == doctest::Approx(v / si.c).epsilon(0.01));
        if (prev_dev != 0.0) CHECK(prev_dev / dev == doctest::Approx(2.0).epsilon(0.01));
        prev_dev = dev;
    }
}

TEST_CASE("pair delay asymmetry matches the first-order expansion") {
    // tau_{k->j} ~ S/(c - zdot_j): the observer's velocity sets the sign.
    const double zj = 20e-9, zk = 35e-9;
    const double vj = 8e4, vk = -5e4;
    const Trajectory tj = make_linear_path(zj, vj, opts(1e-13));
    const Trajectory tk = make_linear_path(zk, vk, opts(1e-13));

    const double t = 5e-14;
    const double tau_kj = roundtrip_delay_pair(tk, tj, t).tau;  // observer j
    const double tau_jk = roundtrip_delay_pair(tj, tk, t).tau;  // observer k
    const double s = tj.z(t) + tk.z(t);

    CHECK(tau_kj == doctest::Approx(s / (si.c - vj)).epsilon(1e-12));
    CHECK(tau_jk == doctest::Approx(s / (si.c - vk)).epsilon(1e-12));

    const double asym = tau_kj - tau_jk;
    CHECK(asym > 0.0);  // vj > vk
    CHECK(asym == doctest::Approx(s * (vj - vk) / (si.c * si.c)).epsilon(1e-3));
}

TEST_CASE("delay solver reports domain and bracketing problems") {
    const Trajectory tr = make_static_path(20e-9, opts(1e-6));
    CHECK_THROWS_AS(roundtrip_delay_self(tr, 2e-6), std::domain_error);        // t outside domain
    CHECK_THROWS_AS(roundtrip_delay_self(tr, 1e-6 - 1e-17), std::exception);   // no room for tau
}
