#ifndef ATOMPHASE_INTERFEROMETER_HPP
#define ATOMPHASE_INTERFEROMETER_HPP

#include <string>
#include <vector>

#include "atomphase/phases.hpp"

namespace atomphase {

struct ScenarioLimits {
    TrajectoryLimits geometry{};
    double accel_ratio_max = 1e-3;      // max |zddot| z / c^2
    double short_distance_max = 1e-2;   // max omega0 * 2 z_max / c
};

// A full N-arm interferometer: one atom in an equal-weight superposition of
// N wave packets following the given central trajectories.
struct Scenario {
    Atom atom;
    ExternalPotential potential;
    ScenarioWindow window;
    std::vector<Trajectory> trajectories;
    QuadratureConfig quad{};
    RootConfig root{};
    PhaseMethod dp_method = PhaseMethod::first_order;
    ScenarioLimits limits{};

    double max_height() const;
};

struct ValidationCheck {
    std::string name;
    bool passed;
    double value;
    double limit;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    bool all_passed() const;
};

struct ValidationOptions {
    bool check_eom = false;
    double eom_tol = 1e-6;
};

ValidationReport validate_scenario(const Scenario& sc, const ValidationOptions& opt = {});

struct ArmPhases {
    int label = 0;
    PhaseBreakdown phases;
};

// Pairwise phase coherences phi_jk = (phi0_j - phi0_k) + (phi_sp_j -
// phi_sp_k) + phi_dp_jk. Only per-arm totals and the upper-triangle
// double-path block are stored, which makes antisymmetry and the zero
// diagonal exact by construction.
class CoherenceMatrix {
public:
    CoherenceMatrix(std::vector<ArmPhases> arms, std::vector<double> dp_upper, PhaseMethod method);

    int size() const { return static_cast<int>(arms_.size()); }
    const std::vector<ArmPhases>& arms() const { return arms_; }
    PhaseMethod method() const { return method_; }

    double arm_total(int k) const { return totals_[k]; }
    double dp(int j, int k) const;          // antisymmetric, zero diagonal
    double standard(int j, int k) const;    // single-path part of the coherence
    double entry(int j, int k) const;       // full coherence phi_jk

private:
    std::vector<ArmPhases> arms_;
    std::vector<double> totals_;
    std::vector<double> dp_upper_;  // pairs (j, k), j < k, lexicographic
    PhaseMethod method_;
};

enum class ExecPolicy { serial, parallel };

// Computes all per-arm phases and all pairwise double-path phases. The
// parallel policy distributes the independent work items over OpenMP
// threads; every item is evaluated by the same deterministic serial kernel,
// so both policies return bit-identical matrices.
CoherenceMatrix coherence_matrix(const Scenario& sc, ExecPolicy exec = ExecPolicy::serial);

struct TripleResidual {
    int j, l, k;
    double full;            // phi_jk - phi_jl - phi_lk
    double standard_only;   // same combination with the DP block removed
    double dp_combination;  // phi_dp_jk - phi_dp_jl - phi_dp_lk
};

struct AdditivityReport {
    std::vector<TripleResidual> triples;  // all ordered triples, lexicographic
    double max_abs_standard = 0.0;
    double max_abs_bookkeeping = 0.0;  // max |full - dp_combination|
    bool has_extraction = false;
    double extraction = 0.0;  // phi_12 - (phi_13 + phi_32) for N = 3
};

AdditivityReport additivity_report(const CoherenceMatrix& m);

struct ExtractionResult {
    double estimate;        // phi_12 - (phi_13 + phi_32)
    double true_dp12;       // directly computed phi_dp_12
    double relative_error;  // NaN when |true_dp12| is below the phase floor
    bool relative_error_defined;
};

// Three-arm protocol: measuring the three pairwise coherences and combining
// them cancels every single-path phase, leaving phi_dp_12 contaminated only
// by phi_dp_13 + phi_dp_32.
ExtractionResult extract_dp12(const CoherenceMatrix& m, double phase_floor = 1e-30);

struct MagnitudeReport {
    double phi_vdw_max;
    double sp_dynamical_max;
    double phi_dp_max;
    double beta_max;  // max |zdot| / c over arms
    double sp_to_vdw_ratio;
    double dp_to_vdw_ratio;
    // The dynamical scales are O(beta) relative to phi_vdw; these normalize
    // the ratios by beta_max (NaN for static scenarios).
    double sp_ratio_per_beta;
    double dp_ratio_per_beta;
};

MagnitudeReport magnitude_report(const Scenario& sc, const CoherenceMatrix& m);
MagnitudeReport magnitude_report(const Scenario& sc);

}  // namespace atomphase

#endif
