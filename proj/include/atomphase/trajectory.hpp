#ifndef ATOMPHASE_TRAJECTORY_HPP
#define ATOMPHASE_TRAJECTORY_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "atomphase/atom.hpp"
#include "atomphase/constants.hpp"
#include "atomphase/potential.hpp"

namespace atomphase {

// Hard geometric bounds every path must respect. The clearance floor keeps
// the 1/z^3 integrands away from the plate singularity; the velocity cap
// keeps the light-cone delay solver's bracket guarantee valid.
struct TrajectoryLimits {
    double z_min = 5e-9;         // m
    double v_max = 0.01 * si.c;  // m/s
};

// One polynomial piece z(t) = c0 + c1 u + c2 u^2 + c3 u^3, u = t - t0.
struct Segment {
    double t0;
    double t1;
    std::array<double, 4> c;

    double z(double u) const { return c[0] + u * (c[1] + u * (c[2] + u * c[3])); }
    double zdot(double u) const { return c[1] + u * (2.0 * c[2] + 3.0 * c[3] * u); }
    double zddot(double u) const { return 2.0 * c[2] + 6.0 * c[3] * u; }

    // z(t0+u+dt) - z(t0+u) in expanded form; every term is O(zdot*dt), so the
    // result keeps full relative precision even when dt is ~1e-16 s.
    double z_increment(double u, double dt) const {
        return dt * (c[1] + c[2] * (2.0 * u + dt) + c[3] * (3.0 * u * u + dt * (3.0 * u + dt)));
    }

    double min_z() const;
    double max_z() const;
    double max_abs_zdot() const;
};

struct TrajectoryState {
    double x;
    double z;
    double xdot;
    double zdot;
    double zddot;
};

// Classical center-of-mass path: piecewise-cubic vertical motion plus a
// uniform drift parallel to the plate. Immutable after construction.
class Trajectory {
public:
    Trajectory(std::vector<Segment> segments, double parallel_velocity, double parallel_origin,
               int label = 0, const TrajectoryLimits& limits = {});

    TrajectoryState evaluate(double t) const;

    double z(double t) const;
    double zdot(double t) const;
    double zddot(double t) const;
    double x(double t) const { return parallel_origin_ + parallel_velocity_ * t; }

    // z(t+dt) - z(t), cancellation-free (see Segment::z_increment). Handles
    // dt spanning a segment boundary.
    double z_increment(double t, double dt) const;

    double t_begin() const { return segments_.front().t0; }
    double t_end() const { return segments_.back().t1; }

    double min_z() const { return min_z_; }
    double max_z() const { return max_z_; }
    double max_abs_zdot() const { return max_abs_zdot_; }

    double parallel_velocity() const { return parallel_velocity_; }
    double parallel_origin() const { return parallel_origin_; }
    int label() const { return label_; }

    const std::vector<Segment>& segments() const { return segments_; }
    const TrajectoryLimits& limits() const { return limits_; }

private:
    const Segment& segment_at(double t) const;

    std::vector<Segment> segments_;
    double parallel_velocity_;
    double parallel_origin_;
    int label_;
    TrajectoryLimits limits_;
    double min_z_;
    double max_z_;
    double max_abs_zdot_;
};

// Interaction window [0, T]. Paths must stay defined up to T + delay_margin
// so retarded integrands can look ahead of T by a round-trip light time.
struct ScenarioWindow {
    double t_end;
    double delay_margin;

    static double default_margin(double z_max) { return 8.0 * z_max / si.c; }
};

struct PrimitiveOptions {
    double domain_end;              // trajectory domain, usually T + delay_margin
    double parallel_velocity = 0.0;
    double parallel_origin = 0.0;
    int label = 0;
    TrajectoryLimits limits{};
};

Trajectory make_static_path(double z0, const PrimitiveOptions& opt);
Trajectory make_linear_path(double z0, double vz, const PrimitiveOptions& opt);
Trajectory make_ballistic_path(double z0, double vz0, double g, const PrimitiveOptions& opt);

// z(t) = z0 + A sin(Omega t + phase0), sampled into C1 cubic Hermite pieces.
// With n nodes per period the interpolation error is bounded by
// A (2 pi / n)^4 / 384; the default n = 200 keeps it below 3e-9 * A.
Trajectory make_sinusoidal_path(double z0, double amplitude, double omega, double phase0,
                                const PrimitiveOptions& opt, int nodes_per_period = 200);

// Hermite interpolation of an arbitrary C1 vertical profile on [0, domain_end].
Trajectory make_sampled_path(const std::function<double(double)>& z_of_t,
                             const std::function<double(double)>& zdot_of_t, int n_nodes,
                             const PrimitiveOptions& opt);

// Time dilatation z(t) -> z(lambda t) with the domain end rescaled to
// new_domain_end (the final segment is extended if the margin requires it).
Trajectory dilate_trajectory(const Trajectory& traj, double lambda, double new_domain_end);

// Max residual of m zddot + dV/dz = 0 over sampled times in [0, t_max],
// normalized by the larger of the two terms. Purely advisory.
double validate_eom(const Trajectory& traj, const Atom& atom, const ExternalPotential& pot,
                    double t_max, int n_samples = 257);

struct AccelerationBound {
    bool ok;
    double worst_ratio;  // max |zddot| z / c^2 over sampled times
};

// Vertical acceleration must stay well below c^2/z for the single-bounce
// retarded treatment to hold; the pass threshold is ratio <= 1e-3.
AccelerationBound check_acceleration_bound(const Trajectory& traj);

}  // namespace atomphase

#endif
