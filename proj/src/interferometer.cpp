#include "atomphase/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace atomphase {

namespace {

int pair_index(int j, int k, int n) {
    // Index of (j, k), j < k, in lexicographic upper-triangle order.
    return j * (2 * n - j - 1) / 2 + (k - j - 1);
}

}  // namespace

double Scenario::max_height() const {
    double z = 0.0;
    for (const Trajectory& t : trajectories) z = std::max(z, t.max_z());
    return z;
}

bool ValidationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const ValidationCheck& c) { return c.passed; });
}

ValidationReport validate_scenario(const Scenario& sc, const ValidationOptions& opt) {
    ValidationReport report;
    auto add = [&](const std::string& name, bool passed, double value, double limit,
                   const std::string& detail) {
        report.checks.push_back({name, passed, value, limit, detail});
    };

    const double z_max = sc.max_height();
    const double needed_margin = 2.0 * z_max / si.c;

    add("window", sc.window.t_end > 0.0, sc.window.t_end, 0.0, "t_end must be > 0");
    add("delay_margin", sc.window.delay_margin >= needed_margin, sc.window.delay_margin,
        needed_margin, "delay_margin must cover one round-trip light time 2 z_max / c");
    add("arm_count", sc.trajectories.size() >= 2, static_cast<double>(sc.trajectories.size()), 2.0,
        "need at least two arms");

    double min_z = std::numeric_limits<double>::infinity();
    double max_beta_v = 0.0;
    double domain_deficit = 0.0;
    for (const Trajectory& t : sc.trajectories) {
        min_z = std::min(min_z, t.min_z());
        max_beta_v = std::max({max_beta_v, t.max_abs_zdot(), std::fabs(t.parallel_velocity())});
        domain_deficit =
            std::max(domain_deficit, (sc.window.t_end + sc.window.delay_margin) - t.t_end());
        domain_deficit = std::max(domain_deficit, t.t_begin() - 0.0);
    }
    add("domain_coverage", domain_deficit <= 0.0, domain_deficit, 0.0,
        "every arm must be defined on [0, t_end + delay_margin]");
    add("clearance", min_z >= sc.limits.geometry.z_min, min_z, sc.limits.geometry.z_min,
        "minimum height above the plate");
    add("velocity", max_beta_v <= sc.limits.geometry.v_max, max_beta_v, sc.limits.geometry.v_max,
        "max |zdot| and |v_parallel| over arms");

    double worst_accel = 0.0;
    for (const Trajectory& t : sc.trajectories)
        worst_accel = std::max(worst_accel, check_acceleration_bound(t).worst_ratio);
    add("acceleration", worst_accel <= sc.limits.accel_ratio_max, worst_accel,
        sc.limits.accel_ratio_max, "max |zddot| z / c^2 over arms");

    const double short_distance = sc.atom.omega0 * 2.0 * z_max / si.c;
    add("short_distance", short_distance <= sc.limits.short_distance_max, short_distance,
        sc.limits.short_distance_max,
        "omega0 * 2 z_max / c; the near-field treatment needs this to be small");

    bool aligned = true;
    for (const Trajectory& t : sc.trajectories) {
        aligned = aligned && t.parallel_velocity() == sc.trajectories.front().parallel_velocity() &&
                  t.parallel_origin() == sc.trajectories.front().parallel_origin();
    }
    add("parallel_alignment", aligned, aligned ? 0.0 : 1.0, 0.0,
        "arms must share the parallel drift and origin (vertically stacked packets)");

    if (opt.check_eom) {
        double worst = 0.0;
        for (const Trajectory& t : sc.trajectories)
            worst = std::max(worst, validate_eom(t, sc.atom, sc.potential, sc.window.t_end));
        add("eom", worst <= opt.eom_tol, worst, opt.eom_tol,
            "max residual of m zddot + dV/dz against the external potential");
    }
    return report;
}

CoherenceMatrix::CoherenceMatrix(std::vector<ArmPhases> arms, std::vector<double> dp_upper,
                                 PhaseMethod method)
    : arms_(std::move(arms)), dp_upper_(std::move(dp_upper)), method_(method) {
    const int n = static_cast<int>(arms_.size());
    if (dp_upper_.size() != static_cast<size_t>(n * (n - 1) / 2))
        throw std::invalid_argument("CoherenceMatrix: pair block size mismatch");
    totals_.reserve(arms_.size());
    for (const ArmPhases& a : arms_) totals_.push_back(a.phases.total());
}

double CoherenceMatrix::dp(int j, int k) const {
    if (j == k) return 0.0;
    const int n = size();
    return j < k ? dp_upper_[pair_index(j, k, n)] : -dp_upper_[pair_index(k, j, n)];
}

double CoherenceMatrix::standard(int j, int k) const { return totals_[j] - totals_[k]; }

double CoherenceMatrix::entry(int j, int k) const {
    if (j == k) return 0.0;
    return standard(j, k) + dp(j, k);
}

CoherenceMatrix coherence_matrix(const Scenario& sc, ExecPolicy exec) {
    const int n = static_cast<int>(sc.trajectories.size());
    if (n < 2) throw std::invalid_argument("coherence_matrix: need at least two arms");

    const int n_pairs = n * (n - 1) / 2;
    std::vector<ArmPhases> arms(n);
    std::vector<double> dp(n_pairs);
    std::vector<std::string> failures(n + n_pairs);

    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(n_pairs);
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) pairs.emplace_back(j, k);

    auto run_arm = [&](int k) {
        const Trajectory& traj = sc.trajectories[k];
        PhaseBreakdown b = (sc.dp_method == PhaseMethod::retarded)
                               ? phi_sp_retarded(sc.atom, traj, sc.window, sc.quad, sc.root)
                               : phi_sp_first_order(sc.atom, traj, sc.window, sc.quad);
        b.phi0 = phi_external(sc.atom, traj, sc.potential, sc.window, sc.quad);
        arms[k] = {traj.label(), b};
    };
    auto run_pair = [&](int p) {
        const auto [j, k] = pairs[p];
        const DoublePathPhase d =
            (sc.dp_method == PhaseMethod::retarded)
                ? phi_dp_retarded(sc.atom, sc.trajectories[j], sc.trajectories[k], sc.window,
                                  sc.quad, sc.root)
                : phi_dp_first_order(sc.atom, sc.trajectories[j], sc.trajectories[k], sc.window,
                                     sc.quad);
        dp[p] = d.value;
    };
    auto run_item = [&](int item) {
        try {
            if (item < n)
                run_arm(item);
            else
                run_pair(item - n);
        } catch (const std::exception& e) {
            std::ostringstream msg;
            if (item < n)
                msg << "arm " << item + 1 << ": " << e.what();
            else
                msg << "pair (" << pairs[item - n].first + 1 << "," << pairs[item - n].second + 1
                    << "): " << e.what();
            failures[item] = msg.str();
        }
    };

    const int n_items = n + n_pairs;
    if (exec == ExecPolicy::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int item = 0; item < n_items; ++item) run_item(item);
    } else {
        for (int item = 0; item < n_items; ++item) run_item(item);
    }

    std::string all_failures;
    for (const std::string& f : failures) {
        if (!f.empty()) all_failures += (all_failures.empty() ? "" : "; ") + f;
    }
    if (!all_failures.empty())
        throw std::runtime_error("coherence_matrix: " + all_failures);

    return CoherenceMatrix(std::move(arms), std::move(dp), sc.dp_method);
}

AdditivityReport additivity_report(const CoherenceMatrix& m) {
    const int n = m.size();
    if (n < 3) throw std::invalid_argument("additivity_report: needs at least three arms");

    AdditivityReport report;
    for (int j = 0; j < n; ++j) {
        for (int l = 0; l < n; ++l) {
            for (int k = 0; k < n; ++k) {
                if (j == l || l == k || j == k) continue;
                TripleResidual r;
                r.j = j;
                r.l = l;
                r.k = k;
                r.full = m.entry(j, k) - m.entry(j, l) - m.entry(l, k);
                r.standard_only = m.standard(j, k) - m.standard(j, l) - m.standard(l, k);
                r.dp_combination = m.dp(j, k) - m.dp(j, l) - m.dp(l, k);
                report.triples.push_back(r);
                report.max_abs_standard = std::max(report.max_abs_standard, std::fabs(r.standard_only));
                report.max_abs_bookkeeping =
                    std::max(report.max_abs_bookkeeping, std::fabs(r.full - r.dp_combination));
            }
        }
    }
    if (n == 3) {
        report.has_extraction = true;
        report.extraction = m.entry(0, 1) - (m.entry(0, 2) + m.entry(2, 1));
    }
    return report;
}

ExtractionResult extract_dp12(const CoherenceMatrix& m, double phase_floor) {
    if (m.size() != 3) throw std::invalid_argument("extract_dp12: requires exactly three arms");

    ExtractionResult out;
    out.estimate = m.entry(0, 1) - (m.entry(0, 2) + m.entry(2, 1));
    out.true_dp12 = m.dp(0, 1);
    out.relative_error_defined = std::fabs(out.true_dp12) > phase_floor;
    out.relative_error = out.relative_error_defined
                             ? std::fabs(out.estimate - out.true_dp12) / std::fabs(out.true_dp12)
                             : std::numeric_limits<double>::quiet_NaN();
    return out;
}

MagnitudeReport magnitude_report(const Scenario& sc, const CoherenceMatrix& m) {
    MagnitudeReport r{};
    for (const ArmPhases& a : m.arms()) {
        r.phi_vdw_max = std::max(r.phi_vdw_max, std::fabs(a.phases.phi_vdw));
        r.sp_dynamical_max = std::max(r.sp_dynamical_max, std::fabs(a.phases.sp_dynamical));
    }
    for (int j = 0; j < m.size(); ++j)
        for (int k = j + 1; k < m.size(); ++k) r.phi_dp_max = std::max(r.phi_dp_max, std::fabs(m.dp(j, k)));
    for (const Trajectory& t : sc.trajectories) r.beta_max = std::max(r.beta_max, t.max_abs_zdot() / si.c);
    r.sp_to_vdw_ratio = r.phi_vdw_max > 0.0 ? r.sp_dynamical_max / r.phi_vdw_max : 0.0;
    r.dp_to_vdw_ratio = r.phi_vdw_max > 0.0 ? r.phi_dp_max / r.phi_vdw_max : 0.0;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.sp_ratio_per_beta = r.beta_max > 0.0 ? r.sp_to_vdw_ratio / r.beta_max : nan;
    r.dp_ratio_per_beta = r.beta_max > 0.0 ? r.dp_to_vdw_ratio / r.beta_max : nan;
    return r;
}

MagnitudeReport magnitude_report(const Scenario& sc) {
    return magnitude_report(sc, coherence_matrix(sc));
}

}  // namespace atomphase
