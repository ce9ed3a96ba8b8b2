#pragma once

#include <functional>
#include <vector>

#include "rns/composite.hpp"

namespace rns {

// ============================================================================
// Finite-volume evolution on a uniform cell-centered grid with far-field
// Dirichlet ghost cells.
//
// Relaxed stepper (tau > 0): Strang splitting.  The relaxation substeps solve
// the stiff stress equation tau Pi_t = mu u_x - v Pi exactly (exponential
// update toward mu u_x / v with centered u_x, v and u frozen); the hyperbolic
// substep advances (v, u) by SSP-RK2 with a local Lax-Friedrichs flux
// (-u, p(v) - Pi) and optional minmod-MUSCL reconstruction, the stress frozen.
// The time step honors the full characteristic speed sqrt(mu/tau - p'(v)).
//
// Classical stepper (tau ignored): same convective treatment on (-u, p(v))
// plus an explicit conservative viscous flux -mu u_x / v, with both an
// advective and a diffusive time-step restriction.
// ============================================================================

struct Grid1D {
    double x_min = -1.0;
    double x_max = 1.0;
    int n = 0;

    double dx() const { return (x_max - x_min) / n; }
    double x(int j) const { return x_min + (static_cast<double>(j) + 0.5) * dx(); }
};

struct FieldState {
    double t = 0.0;
    std::vector<double> v;
    std::vector<double> u;
    std::vector<double> Pi;
};

enum class Reconstruction { none, minmod_muscl };
enum class Stepper { relaxed, classical };

struct FarField {
    EndState left;
    EndState right;  // ghost stress is zero on both sides
};

struct SolverConfig {
    Stepper stepper = Stepper::relaxed;
    Reconstruction recon = Reconstruction::minmod_muscl;
    double cfl = 0.45;
    double diffusion_cfl = 0.4;
    FarField bc;
    // Scale for the boundary-contamination abort: run() stops with
    // DomainTooSmallError when a boundary volume departs from its far-field
    // value by more than 1e-6 * boundary_tol_scale.
    double boundary_tol_scale = 1.0;
};

// Time-integrated numerical fluxes through the two domain boundaries,
// accumulated per conserved field; used for boundary-corrected conservation
// accounting.
struct StepFluxes {
    double v_left = 0.0;
    double v_right = 0.0;
    double u_left = 0.0;
    double u_right = 0.0;
};

struct RunStats {
    long steps = 0;
    StepFluxes flux;
};

// max_j sqrt(mu/tau - p'(v_j)); +inf when tau = 0.
double max_signal_speed(const GasModel& g, const FieldState& s);

// Relative boundary-corrected drift of a conserved cell total:
// |total_final - total_initial - (flux_left - flux_right)| / max(1, |total_initial|),
// where flux_* are the accumulated boundary fluxes of that field.
double conservation_drift(double total_initial, double total_final, double flux_left,
                          double flux_right);

// Largest stable step for the configured stepper at the current state.
double stable_dt(const GasModel& g, const FieldState& s, const Grid1D& grid, const SolverConfig& cfg);

// One full step of size dt.  Both steppers validate finiteness and positivity
// afterwards (SolverBlowupError).  When flux is non-null the step adds its
// time-integrated boundary fluxes.
void step_relaxed(const GasModel& g, FieldState& s, const Grid1D& grid, const SolverConfig& cfg,
                  double dt, StepFluxes* flux = nullptr);
void step_classical(const GasModel& g, FieldState& s, const Grid1D& grid, const SolverConfig& cfg,
                    double dt, StepFluxes* flux = nullptr);

// Convenience single-step entry points choosing dt = stable_dt(...).
void step_relaxed(const GasModel& g, FieldState& s, const Grid1D& grid, const SolverConfig& cfg);
void step_classical(const GasModel& g, FieldState& s, const Grid1D& grid, const SolverConfig& cfg);

struct Perturbation {
    enum class Kind { none, gauss };
    enum class Target { v, u, both };
    Kind kind = Kind::none;
    Target target = Target::v;
    double amplitude = 0.0;
    double center = 0.0;
    double width = 1.0;

    // A * exp(-(x-c)^2 / w^2)
    double operator()(double x) const;
};

// Samples the composite at t = 0 with zero shifts, verifies the tails reach
// the far field to 1e-8 (DomainTooSmallError otherwise), applies the
// perturbation, and verifies positivity (VacuumError).
FieldState init_from_composite(const GasModel& g, const CompositeWave& w, const Grid1D& grid,
                               const Perturbation& pert);

// Periodic reduction over immutable state snapshots.  Callbacks fire once at
// the initial time and then at the first step whose time reaches each
// successive multiple of `interval`; an observer with interval 2h sees every
// other sample of one with interval h.  Callbacks must copy the state if they
// retain it.
struct Observer {
    double interval = 1.0;
    std::function<void(const FieldState&)> fn;
};

// Called before each step with the state about to be advanced and the step
// size chosen for it; used to couple step-synchronous integrations (shifts).
using PreStepHook = std::function<void(const FieldState&, double dt)>;

// Advances to t_end (exact final hit by a truncated last step), firing
// observers, running the pre-step hook, accumulating stats, and aborting with
// DomainTooSmallError on boundary contamination.
FieldState run(const GasModel& g, FieldState s, const Grid1D& grid, const SolverConfig& cfg,
               double t_end, std::vector<Observer> observers = {}, PreStepHook pre_step = {},
               RunStats* stats = nullptr);

}  // namespace rns
