#ifndef ATOMPHASE_RETARDATION_HPP
#define ATOMPHASE_RETARDATION_HPP

#include "atomphase/numerics.hpp"
#include "atomphase/trajectory.hpp"

namespace atomphase {

// Solution of the single-bounce light-cone condition
//   c tau = | r_obs(t_src + tau) - r_src_image(t_src) |
// where the image point mirrors the source across the plate (z -> -z).
struct DelaySolution {
    double tau;            // round-trip delay, s
    double t_source;       // emission time t', s
    double mean_distance;  // zbar = (z_src(t') + z_obs(t' + tau)) / 2, m
};

// Source and observer on the same path (field emitted, bounced off the
// plate, reabsorbed by the same wave packet). tau ~ 2 z / c at rest.
DelaySolution roundtrip_delay_self(const Trajectory& traj, double t_src, const RootConfig& cfg = {});

// Source on one path, observer on another; not symmetric under exchanging
// the two paths once they move.
DelaySolution roundtrip_delay_pair(const Trajectory& src, const Trajectory& obs, double t_src,
                                   const RootConfig& cfg = {});

}  // namespace atomphase

#endif
