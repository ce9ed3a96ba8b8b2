#pragma once

#include "rns/profile.hpp"

namespace rns {

// ============================================================================
// Composite double-shock wave: superposition of the two profiles minus the
// shared middle state, each profile evaluated in its own moving frame
//   xi_i = x - sigma_i t - X_i,
// plus the monotone weight used by the shift diagnostics,
//   a = a1 + a2 - 1,  a_i = 1 + lambda_i (p(v_m) - p(v_i(xi_i))) / delta_i,
// and the two interaction sources by which the superposition fails to solve
// the system exactly (momentum source F1, stress source F2).
// ============================================================================

struct CompositeWave {
    WaveProfile p1;  // family 1 (sigma < 0)
    WaveProfile p2;  // family 2 (sigma > 0)
    EndState mid;    // shared middle state
    double p_mid = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    GasModel gas;
};

struct CompositeState {
    double v;
    double u;
    double Pi;
};

// Assembles and validates the composite.  lambda_i <= 0 selects the default
// sqrt(delta_i).  Requires p1/p2 of families 1/2 sharing the middle state
// exactly, and 0 < lambda_i < 1 with lambda_i >= delta_i.
CompositeWave make_composite(const GasModel& g, const WaveProfile& p1, const WaveProfile& p2,
                             double lambda1 = 0.0, double lambda2 = 0.0);

// Superposed fields at (t, x) with shifts (X1, X2).
CompositeState eval_composite(const CompositeWave& w, double t, double x, double X1, double X2);

// Weight a(t, x); ranges over [1, 1 + lambda1 + lambda2], increasing across
// each layer in the direction that family's shock moves.
double weight_a(const CompositeWave& w, double t, double x, double X1, double X2);

// Momentum interaction source
//   F1 = p'(v~)(v1_x + v2_x) - p'(v1) v1_x - p'(v2) v2_x
// with ODE-exact profile slopes; identically zero wherever either profile is
// flat.
double source_F1(const CompositeWave& w, double t, double x, double X1, double X2);

// Stress interaction source  F2 = (v2 - v_m) Pi1 + (v1 - v_m) Pi2.
double source_F2(const CompositeWave& w, double t, double x, double X1, double X2);

}  // namespace rns
