#include "atomphase/retardation.hpp"

#include <cmath>

namespace atomphase {

namespace {

DelaySolution solve_delay(const Trajectory& src, const Trajectory& obs, double t_src,
                          const RootConfig& cfg) {
    if (t_src < src.t_begin() || t_src > src.t_end())
        throw std::domain_error("roundtrip_delay: t_src outside source domain");

    const double z_src = src.z(t_src);
    const double z_obs0 = obs.z(t_src);
    const double dx0 = (obs.parallel_origin() - src.parallel_origin()) +
                       (obs.parallel_velocity() - src.parallel_velocity()) * t_src;

    // c tau - distance(observer(t+tau), image of source(t)); the vertical
    // separation is z_src + z_obs(t+tau) because the image sits at -z_src.
    auto gap = [&](double tau) {
        const double dx = dx0 + obs.parallel_velocity() * tau;
        const double sz = z_src + (z_obs0 + obs.z_increment(t_src, tau));
        return si.c * tau - std::sqrt(dx * dx + sz * sz);
    };

    // gap(0) < 0 always; grow the upper end until the sign flips. With
    // |zdot|, |v_parallel| <= 0.01 c the first guess already brackets.
    double hi = (4.0 * std::max(src.max_z(), obs.max_z()) + 2.0 * std::fabs(dx0)) / si.c;
    int expansions = 0;
    while (gap(hi) <= 0.0) {
        hi *= 1.5;
        if (t_src + hi > obs.t_end() || ++expansions > 60)
            throw RootError("roundtrip_delay: failed to bracket light-cone root "
                            "(velocity bound or delay margin violated)");
    }
    if (t_src + hi > obs.t_end())
        throw std::domain_error("roundtrip_delay: bracket exceeds observer domain (delay margin too small)");

    const double tau = find_root(gap, 0.0, hi, cfg);
    const double mean = 0.5 * (z_src + z_obs0) + 0.5 * obs.z_increment(t_src, tau);
    return {tau, t_src, mean};
}

}  // namespace

DelaySolution roundtrip_delay_self(const Trajectory& traj, double t_src, const RootConfig& cfg) {
    return solve_delay(traj, traj, t_src, cfg);
}

DelaySolution roundtrip_delay_pair(const Trajectory& src, const Trajectory& obs, double t_src,
                                   const RootConfig& cfg) {
    return solve_delay(src, obs, t_src, cfg);
}

}  // namespace atomphase
