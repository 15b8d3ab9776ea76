#include "atomphase/phases.hpp"

#include <cmath>

namespace atomphase {

namespace {

inline double cube(double v) { return v * v * v; }

void require_window(const ScenarioWindow& win, const Trajectory& traj) {
    if (!(win.t_end > 0.0)) throw std::invalid_argument("ScenarioWindow: t_end must be > 0");
    if (traj.t_begin() > 0.0 || traj.t_end() < win.t_end)
        throw std::domain_error("phase integral: trajectory does not cover the window");
}

}  // namespace

const char* to_string(PhaseMethod m) {
    return m == PhaseMethod::first_order ? "first_order" : "retarded";
}

double phi_external(const Atom& atom, const Trajectory& traj, const ExternalPotential& pot,
                    const ScenarioWindow& win, const QuadratureConfig& quad) {
    require_window(win, traj);
    auto lagrangian = [&](double t) {
        const TrajectoryState s = traj.evaluate(t);
        const double kinetic = 0.5 * atom.mass * (s.xdot * s.xdot + s.zdot * s.zdot);
        return kinetic - atom.internal_energy - pot.value({s.x, 0.0, s.z});
    };
    return integrate(lagrangian, 0.0, win.t_end, quad).value / si.hbar;
}

double phi_vdw(const Atom& atom, const Trajectory& traj, const ScenarioWindow& win,
               const QuadratureConfig& quad) {
    require_window(win, traj);
    const double c3_hbar = vdw_c3_over_hbar(atom);
    auto integrand = [&](double t) { return 1.0 / cube(traj.z(t)); };
    return c3_hbar * integrate(integrand, 0.0, win.t_end, quad).value;
}

double coarse_grained_potential(const Atom& atom, const Trajectory& traj, double t,
                                const QuadratureConfig& quad, const RootConfig& root) {
    const DelaySolution sol = roundtrip_delay_self(traj, t, root);
    auto v = [&](double tp) { return vdw_potential(atom, traj.z(tp)); };
    return integrate(v, t, t + sol.tau, quad).value / sol.tau;
}

PhaseBreakdown phi_sp_retarded(const Atom& atom, const Trajectory& traj, const ScenarioWindow& win,
                               const QuadratureConfig& quad, const RootConfig& root) {
    require_window(win, traj);
    const double c3_hbar = vdw_c3_over_hbar(atom);

    // 1/zbar^3 - 1/z^3 = -delta (z^2 + z zbar + zbar^2) / (zbar^3 z^3) with
    // delta = zbar - z = increment/2; evaluating it this way keeps full
    // precision although the correction is ~zdot/c of either term.
    auto dynamical = [&](double t) {
        const DelaySolution sol = roundtrip_delay_self(traj, t, root);
        const double z = traj.z(t);
        const double delta = 0.5 * traj.z_increment(t, sol.tau);
        const double zbar = z + delta;
        return -delta * (z * z + z * zbar + zbar * zbar) / (cube(zbar) * cube(z));
    };

    PhaseBreakdown out;
    out.method = PhaseMethod::retarded;
    out.phi_vdw = phi_vdw(atom, traj, win, quad);
    out.sp_dynamical = c3_hbar * integrate(dynamical, 0.0, win.t_end, quad).value;
    return out;
}

PhaseBreakdown phi_sp_first_order(const Atom& atom, const Trajectory& traj,
                                  const ScenarioWindow& win, const QuadratureConfig& quad) {
    require_window(win, traj);
    const double c3_hbar = vdw_c3_over_hbar(atom);

    // -(1/hbar) Int V' z zdot / c dt = -(3 C3 / hbar c) Int zdot / z^3 dt
    auto gradient_term = [&](double t) { return traj.zdot(t) / cube(traj.z(t)); };

    PhaseBreakdown out;
    out.method = PhaseMethod::first_order;
    out.phi_vdw = phi_vdw(atom, traj, win, quad);
    out.sp_dynamical = -(3.0 * c3_hbar / si.c) * integrate(gradient_term, 0.0, win.t_end, quad).value;
    return out;
}

double sp_endpoint_correction(const Atom& atom, const Trajectory& traj, const ScenarioWindow& win) {
    require_window(win, traj);
    const double z0 = traj.z(0.0);
    const double zT = traj.z(win.t_end);
    return 1.5 * vdw_c3_over_hbar(atom) / si.c * (1.0 / (zT * zT) - 1.0 / (z0 * z0));
}

DoublePathPhase phi_dp_first_order(const Atom& atom, const Trajectory& traj_j,
                                   const Trajectory& traj_k, const ScenarioWindow& win,
                                   const QuadratureConfig& quad) {
    require_window(win, traj_j);
    require_window(win, traj_k);

    auto integrand = [&](double t) {
        const double dv = traj_k.zdot(t) - traj_j.zdot(t);
        return dv / cube(traj_j.z(t) + traj_k.z(t));
    };

    DoublePathPhase out;
    out.j = traj_j.label();
    out.k = traj_k.label();
    out.method = PhaseMethod::first_order;
    out.value = 3.0 * atom.omega0 * atom.alpha0_volume / si.c *
                integrate(integrand, 0.0, win.t_end, quad).value;
    return out;
}

DoublePathPhase phi_dp_retarded(const Atom& atom, const Trajectory& traj_j,
                                const Trajectory& traj_k, const ScenarioWindow& win,
                                const QuadratureConfig& quad, const RootConfig& root) {
    require_window(win, traj_j);
    require_window(win, traj_k);
    const double c3_hbar = vdw_c3_over_hbar(atom);

    // 1/a^3 - 1/b^3 with a = zbar_{k->j}, b = zbar_{j->k}. Both mean
    // distances share the instantaneous part (z_j + z_k)/2, so their
    // difference reduces to half the difference of the two look-ahead
    // increments; (a^2 + ab + b^2) is formed symmetrically so that swapping
    // the arms flips the sign bit-exactly.
    auto integrand = [&](double t) {
        const DelaySolution d_kj = roundtrip_delay_pair(traj_k, traj_j, t, root);
        const DelaySolution d_jk = roundtrip_delay_pair(traj_j, traj_k, t, root);
        const double base = 0.5 * (traj_j.z(t) + traj_k.z(t));
        const double inc_j = 0.5 * traj_j.z_increment(t, d_kj.tau);
        const double inc_k = 0.5 * traj_k.z_increment(t, d_jk.tau);
        const double a = base + inc_j;
        const double b = base + inc_k;
        const double diff = inc_k - inc_j;  // = b - a
        const double s = a + b;
        const double sym = s * s - a * b;  // a^2 + ab + b^2
        return diff * sym / (cube(a) * cube(b));
    };

    DoublePathPhase out;
    out.j = traj_j.label();
    out.k = traj_k.label();
    out.method = PhaseMethod::retarded;
    out.value = c3_hbar * integrate(integrand, 0.0, win.t_end, quad).value;
    return out;
}

}  // namespace atomphase
