#pragma once

#include <string>
#include <vector>

#include "rns/solver.hpp"

namespace rns {

// ============================================================================
// Shift dynamics and stability diagnostics.
//
// Each shock layer carries a shift X_i(t) evolved by a weighted projection of
// the solution's departure from the (shifted) composite onto that layer:
//   dX_i/dt = (M / delta_i) * Int a * dv_i * [ (p(v) - p(v~))
//                                              + p'(v_i) (v - v~) ] dx,
// with M a fixed constant of the middle state, dv_i the exact profile slope
// in layer i's frame, and a the composite weight.  The diagnostics package
// evaluates the weighted relative entropy and the dissipation-scale
// functionals used to monitor contraction, plus error norms against the
// shifted composite and boundary-corrected conservation totals.
// ============================================================================

struct ShiftState {
    double X1 = 0.0;
    double X2 = 0.0;
    double X1dot = 0.0;  // most recent rates (diagnostic)
    double X2dot = 0.0;
};

struct ShiftRates {
    double X1dot = 0.0;
    double X2dot = 0.0;
};

// M = 5 (gamma + 1) / (8 gamma p(v_m)) * (-p'(v_m))^(3/2)
double shift_constant_M(const GasModel& g, double v_m);

// Midpoint-rule quadrature of the projection integrals on the cells where the
// corresponding profile slope is nonzero.
ShiftRates shift_rhs(const GasModel& g, const CompositeWave& w, const FieldState& s,
                     const Grid1D& grid, const ShiftState& shifts);

// Forward Euler: X_i += dt * rate_i; stores the rates.
void advance_shift(ShiftState& shifts, const ShiftRates& rates, double dt);

// Relative entropy density against a reference state:
//   eta = |u - u~|^2/2 + H(v|v~) + tau |Pi - Pi~|^2 / (2 mu)
double entropy_density(const GasModel& g, double v, double u, double Pi, const CompositeState& ref);

struct Functionals {
    double E_weighted = 0.0;  // Int a * eta dx
    double Gs = 0.0;          // sum_i Int |dv_i| (v - v~)^2 dx
    double G = 0.0;           // Int (v/mu) (Pi - Pi~)^2 dx
    double D = 0.0;           // Int a/(gamma p(v)) (D0 p(v) - p'(v~)(dv1+dv2))^2 dx
};
Functionals compute_functionals(const GasModel& g, const CompositeWave& w, const FieldState& s,
                                const Grid1D& grid, const ShiftState& shifts);

struct ErrorNorms {
    double sup_v = 0.0, sup_u = 0.0, sup_Pi = 0.0;
    double l2_v = 0.0, l2_u = 0.0, l2_Pi = 0.0;
    // sqrt( Int (dv^2 + du^2 + tau dPi^2) dx )
    double l2_combined = 0.0;
};
ErrorNorms error_norms(const GasModel& g, const CompositeWave& w, const FieldState& s,
                       const Grid1D& grid, const ShiftState& shifts);

// Whether the shifted layers stay ordered and separated at time t > 0:
//   X1 + sigma1 t <= sigma1 t / 2 < 0 < sigma2 t / 2 <= X2 + sigma2 t.
// Throws std::invalid_argument for t <= 0.
bool check_separation(const CompositeWave& w, const ShiftState& shifts, double t);

// Cell totals sum q_j dx of the conserved fields.
struct Totals {
    double v = 0.0;
    double u = 0.0;
};
Totals field_totals(const FieldState& s, const Grid1D& grid);

// One diagnostics sample; columns are pinned in diagnostics_columns() order.
struct DiagnosticsRow {
    double t = 0.0;
    double X1 = 0.0, X2 = 0.0, X1dot = 0.0, X2dot = 0.0;
    double E_weighted = 0.0, Gs = 0.0, G = 0.0, D = 0.0;
    double err_sup_v = 0.0, err_sup_u = 0.0, err_sup_Pi = 0.0, err_L2 = 0.0;
    double total_v = 0.0, total_u = 0.0;
};
const std::vector<std::string>& diagnostics_columns();
std::vector<double> diagnostics_values(const DiagnosticsRow& r);
DiagnosticsRow make_diagnostics_row(const GasModel& g, const CompositeWave& w, const FieldState& s,
                                    const Grid1D& grid, const ShiftState& shifts);

// A-priori bound on the shift rates from the same quadrature:
//   |X1dot| + |X2dot| <= C_quad * sup_j |v_j - v~_j|,
// with C_quad = sum_i (M/delta_i) [ Lp * Int a |dv_i| dx + Int a |p'(v_i) dv_i| dx ]
// and Lp the largest secant slope |p(v_j) - p(v~_j)| / |v_j - v~_j| over the
// layer windows.  ratio = rate_sum / (C_quad * sup_v_err), 0 when degenerate.
struct ShiftBound {
    double rate_sum = 0.0;
    double C_quad = 0.0;
    double sup_v_err = 0.0;
    double ratio = 0.0;
};
ShiftBound shift_bound(const GasModel& g, const CompositeWave& w, const FieldState& s,
                       const Grid1D& grid, const ShiftState& shifts);

}  // namespace rns
