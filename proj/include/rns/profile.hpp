#pragma once

#include <vector>

#include "rns/riemann.hpp"

namespace rns {

// ============================================================================
// Viscous shock profiles.  Each admissible link carries a traveling-wave
// solution of the relaxed system; after eliminating velocity and stress it
// reduces to a scalar autonomous ODE for the volume,
//     dv/dxi = v h(v) / (sigma (mu + tau h'(v))),
//     h(v)   = sigma^2 (v_up - v) + (p(v_up) - p(v)),   v_up = link.left.v,
//     h'(v)  = -sigma^2 - p'(v),
// integrated by fixed-step RK4 from the volume midpoint at xi = 0 outwards in
// both directions until the tails close.  Velocity and stress are recovered
// algebraically from the volume samples.
// ============================================================================

struct WaveProfile {
    ShockLink link;
    GasModel gas;                  // model the profile was solved under
    double dxi = 0.0;              // uniform sample spacing
    double xi0 = 0.0;              // coordinate of the first sample
    std::vector<double> xi;        // strictly increasing sample coordinates
    std::vector<double> v;         // volume samples
    std::vector<double> u;         // velocity samples
    std::vector<double> Pi;        // stress samples
    // Clamp values used outside the sampled range (exact end states; Pi -> 0).
    EndState clamp_left;
    EndState clamp_right;

    double xi_last() const { return xi0 + dxi * static_cast<double>(v.size() - 1); }
};

struct ProfileSample {
    double v;
    double u;
    double Pi;
};

// Right-hand side of the profile ODE at volume v.  Throws AdmissibilityError
// when mu + tau h'(v) <= 0 (relaxation time beyond the monotonicity bound).
double profile_rhs(const GasModel& g, const ShockLink& link, double v);

// Same, reusing an existing pressure evaluation at v (hot-loop variant).
double profile_rhs_pair(const GasModel& g, const ShockLink& link, double v,
                        const PressurePair& pp);

// Profile stress from the volume and its slope:
//   Pi = (sigma^3 tau + sigma tau p'(v) - mu sigma)/v * dv_dxi
//      = -sigma (mu + tau h'(v)) dv_dxi / v.
double reconstruct_Pi(const GasModel& g, const ShockLink& link, double v, double dv_dxi);

// Integrates the profile.  dxi <= 0 selects the default 0.02/link.delta.
// tail_tol is the stopping threshold relative to the pressure strength:
// integration stops once |v - v_end| < tail_tol * link.delta on each side.
// Throws ProfileDivergenceError if a tail fails to close within
// |xi| <= 1e3/link.delta.
WaveProfile solve_profile(const GasModel& g, const ShockLink& link, double dxi = 0.0,
                          double tail_tol = 1e-10);

// Piecewise-linear evaluation; beyond the sampled range returns the exact end
// states with zero stress.
ProfileSample eval(const WaveProfile& w, double xi);

// ODE-exact slope at xi: profile_rhs at the interpolated volume; exactly zero
// beyond the sampled range.
double eval_dv(const WaveProfile& w, double xi);

// Least-squares exponential tail rates, fitted on samples whose volume
// deviation from the end state lies in [1e-8, 1e-2] * link.delta.  Rates are
// positive for exponential approach; pi_rate_* fit |Pi| on the same windows.
struct DecayReport {
    double rate_left = 0.0;
    double rate_right = 0.0;
    double pi_rate_left = 0.0;
    double pi_rate_right = 0.0;
    int n_left = 0;
    int n_right = 0;
    bool conclusive = false;  // both windows held at least 8 samples
};
DecayReport check_decay(const WaveProfile& w);

}  // namespace rns
