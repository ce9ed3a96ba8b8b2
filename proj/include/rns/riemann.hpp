#pragma once

#include "rns/constitutive.hpp"

namespace rns {

// ============================================================================
// Riemann layer for the p-system: double-shock wave patterns only.
// A 1-shock (sigma < 0) followed by a 2-shock (sigma > 0), joined at a middle
// state found by a bracketed bisection on the velocity-drop residual.
// ============================================================================

struct EndState {
    double v = 1.0;
    double u = 0.0;
};

struct ShockLink {
    int family = 0;       // 1 or 2
    EndState left;        // state at xi -> -inf
    EndState right;       // state at xi -> +inf
    double sigma = 0.0;   // shock speed: negative for family 1, positive for family 2
    double delta = 0.0;   // pressure-jump strength |p(left.v) - p(right.v)|
    double p_left = 0.0;  // cached p(left.v)
    double p_right = 0.0; // cached p(right.v)
};

struct RiemannSolution {
    EndState left;
    EndState right;
    EndState mid;
    ShockLink link1;
    ShockLink link2;
};

struct TauCheck {
    double tau_max = 0.0;
    bool pass = false;
};

// Entropic shock speed for the given family connecting volumes vl (left) to vr
// (right): magnitude sqrt((p(vl)-p(vr))/(vr-vl)), sign -/+ for family 1/2.
// Throws DegenerateShockError for |vl-vr| < 1e-12 and AdmissibilityError when
// the ordering violates the family's Lax condition (family 1 compresses to the
// right, family 2 expands to the right).
double shock_speed(const GasModel& g, int family, double vl, double vr);

// Magnitude of the velocity jump across an admissible shock of the family:
// sqrt((p(v_small)-p(v_large)) * (v_large - v_small)); u drops by this amount
// from left to right across either family.  Same error conditions as
// shock_speed.
double hugoniot_velocity_drop(const GasModel& g, int family, double vl, double vr);

// Builds a link with validated speed, strength, and cached end pressures.
ShockLink make_shock_link(const GasModel& g, int family, EndState left, EndState right);

// Solves for the middle state of the double-shock pattern connecting `left`
// to `right`: bracketed bisection to width 1e-14 on
//   Phi(v) = left.u - drop1(v) - drop2(v) - right.u,
// followed by 3 Newton polish steps.  Throws NotDoubleShockError when the data
// admit no double-shock solution (Phi at zero strength <= 0) and VacuumError
// when the root falls below 1e-6 * min(left.v, right.v).
RiemannSolution solve_midstate(const GasModel& g, EndState left, EndState right);

// Largest admissible relaxation time for the solved pattern:
//   tau_max = min(1, min_i inf_{v in [v_m, v_end_i]} mu / |sigma_i^2 + p'(v)|),
// the infimum sampled at `samples` points per link.  pass = (g.tau <= tau_max).
TauCheck check_tau_admissible(const GasModel& g, const RiemannSolution& sol, int samples = 10000);

}  // namespace rns
