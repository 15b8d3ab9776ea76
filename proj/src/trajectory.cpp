#include "atomphase/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace atomphase {

namespace {

void collect_zdot_roots(const Segment& s, double h, double* roots, int& n_roots) {
    // zdot(u) = c1 + 2 c2 u + 3 c3 u^2
    n_roots = 0;
    const double a = 3.0 * s.c[3];
    const double b = 2.0 * s.c[2];
    const double c = s.c[1];
    if (a == 0.0) {
        if (b != 0.0) {
            const double u = -c / b;
            if (u > 0.0 && u < h) roots[n_roots++] = u;
        }
        return;
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return;
    const double sq = std::sqrt(disc);
    for (double u : {(-b + sq) / (2.0 * a), (-b - sq) / (2.0 * a)}) {
        if (u > 0.0 && u < h) roots[n_roots++] = u;
    }
}

}  // namespace

double Segment::min_z() const {
    const double h = t1 - t0;
    double lo = std::min(z(0.0), z(h));
    double roots[2];
    int n = 0;
    collect_zdot_roots(*this, h, roots, n);
    for (int i = 0; i < n; ++i) lo = std::min(lo, z(roots[i]));
    return lo;
}

double Segment::max_z() const {
    const double h = t1 - t0;
    double hi = std::max(z(0.0), z(h));
    double roots[2];
    int n = 0;
    collect_zdot_roots(*this, h, roots, n);
    for (int i = 0; i < n; ++i) hi = std::max(hi, z(roots[i]));
    return hi;
}

double Segment::max_abs_zdot() const {
    const double h = t1 - t0;
    double v = std::max(std::fabs(zdot(0.0)), std::fabs(zdot(h)));
    if (c[3] != 0.0) {
        const double u = -c[2] / (3.0 * c[3]);  // zddot = 0
        if (u > 0.0 && u < h) v = std::max(v, std::fabs(zdot(u)));
    }
    return v;
}

Trajectory::Trajectory(std::vector<Segment> segments, double parallel_velocity,
                       double parallel_origin, int label, const TrajectoryLimits& limits)
    : segments_(std::move(segments)),
      parallel_velocity_(parallel_velocity),
      parallel_origin_(parallel_origin),
      label_(label),
      limits_(limits) {
    if (segments_.empty()) throw std::invalid_argument("Trajectory: needs at least one segment");

    const double span = segments_.back().t1 - segments_.front().t0;
    if (!(span > 0.0)) throw std::invalid_argument("Trajectory: domain must have positive length");

    for (const Segment& s : segments_) {
        if (!(s.t1 > s.t0)) throw std::invalid_argument("Trajectory: segment with non-positive length");
    }
    // Velocity scale for the zdot continuity tolerance: joints near a turning
    // point would otherwise face an impossible relative comparison against ~0.
    double v_scale = 0.0;
    for (const Segment& s : segments_) v_scale = std::max(v_scale, s.max_abs_zdot());
    for (size_t i = 0; i + 1 < segments_.size(); ++i) {
        const Segment& l = segments_[i];
        const Segment& r = segments_[i + 1];
        if (std::fabs(r.t0 - l.t1) > 1e-12 * span)
            throw std::invalid_argument("Trajectory: segments not contiguous");
        const double zl = l.z(l.t1 - l.t0), zr = r.z(0.0);
        if (std::fabs(zl - zr) > 1e-12 * std::max(std::fabs(zl), std::fabs(zr)) + 1e-30)
            throw std::invalid_argument("Trajectory: z discontinuous at segment boundary");
        const double vl = l.zdot(l.t1 - l.t0), vr = r.zdot(0.0);
        if (std::fabs(vl - vr) > 1e-12 * v_scale + 1e-30)
            throw std::invalid_argument("Trajectory: zdot discontinuous at segment boundary");
    }

    min_z_ = std::numeric_limits<double>::infinity();
    max_z_ = -std::numeric_limits<double>::infinity();
    max_abs_zdot_ = 0.0;
    for (const Segment& s : segments_) {
        min_z_ = std::min(min_z_, s.min_z());
        max_z_ = std::max(max_z_, s.max_z());
        max_abs_zdot_ = std::max(max_abs_zdot_, s.max_abs_zdot());
    }

    if (min_z_ < limits_.z_min)
        throw std::domain_error("Trajectory: plate clearance violated (z < z_min)");
    if (max_abs_zdot_ > limits_.v_max)
        throw std::domain_error("Trajectory: vertical velocity exceeds v_max");
    if (std::fabs(parallel_velocity_) > limits_.v_max)
        throw std::domain_error("Trajectory: parallel velocity exceeds v_max");
}

const Segment& Trajectory::segment_at(double t) const {
    const double slack =
        16.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(t_begin()), std::fabs(t_end()));
    if (t < t_begin() - slack || t > t_end() + slack)
        throw std::domain_error("Trajectory: time outside domain");
    // First segment with t0 <= t < t1; the final segment owns its right edge.
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](double value, const Segment& s) { return value < s.t0; });
    if (it != segments_.begin()) --it;
    return *it;
}

TrajectoryState Trajectory::evaluate(double t) const {
    const Segment& s = segment_at(t);
    const double u = t - s.t0;
    return {x(t), s.z(u), parallel_velocity_, s.zdot(u), s.zddot(u)};
}

double Trajectory::z(double t) const {
    const Segment& s = segment_at(t);
    return s.z(t - s.t0);
}

double Trajectory::zdot(double t) const {
    const Segment& s = segment_at(t);
    return s.zdot(t - s.t0);
}

double Trajectory::zddot(double t) const {
    const Segment& s = segment_at(t);
    return s.zddot(t - s.t0);
}

double Trajectory::z_increment(double t, double dt) const {
    if (dt == 0.0) return 0.0;
    if (dt < 0.0) return -z_increment(t + dt, -dt);
    const Segment* s = &segment_at(t);
    double acc = 0.0;
    double tcur = t;
    double remaining = dt;
    // Delays are tiny compared with segment lengths, so this loop almost
    // always runs once; boundary crossings stay exact because adjacent
    // segments share their node values.
    while (true) {
        const double u = tcur - s->t0;
        const double room = s->t1 - tcur;
        if (remaining <= room || s == &segments_.back()) {
            acc += s->z_increment(u, remaining);
            return acc;
        }
        acc += s->z_increment(u, room);
        tcur = s->t1;
        remaining -= room;
        ++s;
    }
}

Trajectory make_static_path(double z0, const PrimitiveOptions& opt) {
    std::vector<Segment> segs{{0.0, opt.domain_end, {z0, 0.0, 0.0, 0.0}}};
    return Trajectory(std::move(segs), opt.parallel_velocity, opt.parallel_origin, opt.label, opt.limits);
}

Trajectory make_linear_path(double z0, double vz, const PrimitiveOptions& opt) {
    std::vector<Segment> segs{{0.0, opt.domain_end, {z0, vz, 0.0, 0.0}}};
    return Trajectory(std::move(segs), opt.parallel_velocity, opt.parallel_origin, opt.label, opt.limits);
}

Trajectory make_ballistic_path(double z0, double vz0, double g, const PrimitiveOptions& opt) {
    std::vector<Segment> segs{{0.0, opt.domain_end, {z0, vz0, -0.5 * g, 0.0}}};
    return Trajectory(std::move(segs), opt.parallel_velocity, opt.parallel_origin, opt.label, opt.limits);
}

Trajectory make_sampled_path(const std::function<double(double)>& z_of_t,
                             const std::function<double(double)>& zdot_of_t, int n_nodes,
                             const PrimitiveOptions& opt) {
    if (n_nodes < 2) throw std::invalid_argument("make_sampled_path: needs at least 2 nodes");
    if (!(opt.domain_end > 0.0)) throw std::invalid_argument("make_sampled_path: domain_end must be > 0");

    const double h = opt.domain_end / (n_nodes - 1);
    std::vector<double> tn(n_nodes), zn(n_nodes), vn(n_nodes);
    for (int i = 0; i < n_nodes; ++i) {
        tn[i] = (i == n_nodes - 1) ? opt.domain_end : i * h;
        zn[i] = z_of_t(tn[i]);
        vn[i] = zdot_of_t(tn[i]);
    }

    std::vector<Segment> segs;
    segs.reserve(n_nodes - 1);
    for (int i = 0; i + 1 < n_nodes; ++i) {
        const double dt = tn[i + 1] - tn[i];
        const double dz = zn[i + 1] - zn[i];
        // Cubic Hermite: matches z and zdot at both nodes.
        const double c2 = (3.0 * dz / dt - 2.0 * vn[i] - vn[i + 1]) / dt;
        const double c3 = (-2.0 * dz / dt + vn[i] + vn[i + 1]) / (dt * dt);
        segs.push_back({tn[i], tn[i + 1], {zn[i], vn[i], c2, c3}});
    }
    return Trajectory(std::move(segs), opt.parallel_velocity, opt.parallel_origin, opt.label, opt.limits);
}

Trajectory make_sinusoidal_path(double z0, double amplitude, double omega, double phase0,
                                const PrimitiveOptions& opt, int nodes_per_period) {
    if (!(omega > 0.0)) throw std::invalid_argument("make_sinusoidal_path: omega must be > 0");
    if (nodes_per_period < 40)
        throw std::invalid_argument("make_sinusoidal_path: needs >= 40 nodes per period");

    const double period = 2.0 * M_PI / omega;
    const int n_nodes = std::max(2, static_cast<int>(std::ceil(opt.domain_end / period * nodes_per_period)) + 1);
    return make_sampled_path(
        [=](double t) { return z0 + amplitude * std::sin(omega * t + phase0); },
        [=](double t) { return amplitude * omega * std::cos(omega * t + phase0); }, n_nodes, opt);
}

Trajectory dilate_trajectory(const Trajectory& traj, double lambda, double new_domain_end) {
    if (!(lambda > 0.0)) throw std::invalid_argument("dilate_trajectory: lambda must be > 0");
    std::vector<Segment> segs;
    segs.reserve(traj.segments().size());
    for (const Segment& s : traj.segments()) {
        Segment d;
        d.t0 = s.t0 / lambda;
        d.t1 = s.t1 / lambda;
        double scale = 1.0;
        for (int i = 0; i < 4; ++i) {
            d.c[i] = s.c[i] * scale;
            scale *= lambda;
        }
        segs.push_back(d);
    }
    if (segs.back().t1 < new_domain_end) segs.back().t1 = new_domain_end;
    return Trajectory(std::move(segs), traj.parallel_velocity() * lambda, traj.parallel_origin(),
                      traj.label(), traj.limits());
}

double validate_eom(const Trajectory& traj, const Atom& atom, const ExternalPotential& pot,
                    double t_max, int n_samples) {
    if (n_samples < 2) throw std::invalid_argument("validate_eom: needs >= 2 samples");
    double worst = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const double t = t_max * i / (n_samples - 1);
        const TrajectoryState s = traj.evaluate(t);
        const double inertial = atom.mass * s.zddot;
        const double force = pot.gradient_z({s.x, 0.0, s.z});
        const double num = std::fabs(inertial + force);
        const double den = std::max(std::fabs(inertial), std::fabs(force));
        if (den > 0.0) worst = std::max(worst, num / den);
    }
    return worst;
}

AccelerationBound check_acceleration_bound(const Trajectory& traj) {
    constexpr int kSamplesPerSegment = 64;
    double worst = 0.0;
    for (const Segment& s : traj.segments()) {
        for (int i = 0; i <= kSamplesPerSegment; ++i) {
            const double u = (s.t1 - s.t0) * i / kSamplesPerSegment;
            worst = std::max(worst, std::fabs(s.zddot(u)) * s.z(u) / (si.c * si.c));
        }
    }
    return {worst <= 1e-3, worst};
}

}  // namespace atomphase
