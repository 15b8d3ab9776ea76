#ifndef ATOMPHASE_PHASES_HPP
#define ATOMPHASE_PHASES_HPP

#include "atomphase/atom.hpp"
#include "atomphase/numerics.hpp"
#include "atomphase/potential.hpp"
#include "atomphase/retardation.hpp"
#include "atomphase/trajectory.hpp"

namespace atomphase {

enum class PhaseMethod { first_order, retarded };

const char* to_string(PhaseMethod m);

// Phases accumulated by a single interferometer arm over the window.
// sp_dynamical is the retardation-induced correction on top of the
// quasi-static dispersion phase; it is O(zdot/c) relative to phi_vdw.
struct PhaseBreakdown {
    double phi0 = 0.0;          // free propagation + external potential, rad
    double phi_vdw = 0.0;       // quasi-static dispersion phase, rad
    double sp_dynamical = 0.0;  // single-path dynamical correction, rad
    PhaseMethod method = PhaseMethod::first_order;

    double sp_total() const { return phi_vdw + sp_dynamical; }
    double total() const { return phi0 + phi_vdw + sp_dynamical; }
};

// Non-local phase attached to an ordered pair of arms. Antisymmetric under
// swapping the pair; identically zero for static arms.
struct DoublePathPhase {
    double value = 0.0;  // rad
    int j = 0;
    int k = 0;
    PhaseMethod method = PhaseMethod::first_order;
};

// (1/hbar) Int_0^T [ m (xdot^2 + zdot^2)/2 - E0 - V_ext(r(t)) ] dt
double phi_external(const Atom& atom, const Trajectory& traj, const ExternalPotential& pot,
                    const ScenarioWindow& win, const QuadratureConfig& quad = {});

// -(1/hbar) Int_0^T V_vdw(z(t)) dt  =  (C3/hbar) Int_0^T dt / z(t)^3  (> 0)
double phi_vdw(const Atom& atom, const Trajectory& traj, const ScenarioWindow& win,
               const QuadratureConfig& quad = {});

// Dispersion potential averaged over the round-trip light time starting at t:
// (1/tau) Int_t^{t+tau} V_vdw(z(t')) dt'.
double coarse_grained_potential(const Atom& atom, const Trajectory& traj, double t,
                                const QuadratureConfig& quad = {}, const RootConfig& root = {});

// Single-path phase with the exact light-cone delay:
// phi_sp = (C3/hbar) Int dt' / zbar(t')^3 with zbar from roundtrip_delay_self.
// The dynamical part is integrated as (C3/hbar) Int [1/zbar^3 - 1/z^3] dt' in
// a cancellation-free form, so static paths give exactly zero.
PhaseBreakdown phi_sp_retarded(const Atom& atom, const Trajectory& traj, const ScenarioWindow& win,
                               const QuadratureConfig& quad = {}, const RootConfig& root = {});

// First order in zdot/c: phi_sp = phi_vdw - (1/hbar) Int V_vdw'(z) z zdot / c dt.
PhaseBreakdown phi_sp_first_order(const Atom& atom, const Trajectory& traj,
                                  const ScenarioWindow& win, const QuadratureConfig& quad = {});

// Closed form of the first-order correction; it depends on the endpoints
// only: (3 C3 / 2 hbar c) (1/z(T)^2 - 1/z(0)^2).
double sp_endpoint_correction(const Atom& atom, const Trajectory& traj, const ScenarioWindow& win);

// Double-path phase to first order in the vertical velocities:
// 3 (omega0 alpha_v / c) Int_0^T (zdot_k - zdot_j) / (z_j + z_k)^3 dt.
// Independent of any common drift parallel to the plate.
DoublePathPhase phi_dp_first_order(const Atom& atom, const Trajectory& traj_j,
                                   const Trajectory& traj_k, const ScenarioWindow& win,
                                   const QuadratureConfig& quad = {});

// Double-path phase from the difference of the two retarded propagation
// integrals, (C3/hbar) Int [1/zbar_{k->j}^3 - 1/zbar_{j->k}^3] dt', with
// exact pair delays. Expanding to first order in zdot/c reproduces
// phi_dp_first_order, prefactor included.
DoublePathPhase phi_dp_retarded(const Atom& atom, const Trajectory& traj_j,
                                const Trajectory& traj_k, const ScenarioWindow& win,
                                const QuadratureConfig& quad = {}, const RootConfig& root = {});

}  // namespace atomphase

#endif
