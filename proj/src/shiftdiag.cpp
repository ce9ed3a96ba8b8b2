#include "rns/shiftdiag.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rns {

namespace {

// Inclusive cell range covering the x-interval where profile p, moving at
// sigma with shift X, has nonzero slope at time t.  Over-inclusive by up to
// one cell per side; the per-cell range check settles the boundary exactly.
struct Window {
    int lo = 0;
    int hi = -1;
};

Window support_window(const WaveProfile& p, double t, double X, const Grid1D& grid) {
    const double shift = p.link.sigma * t + X;
    const double xlo = p.xi0 + shift;
    const double xhi = p.xi_last() + shift;
    const double dx = grid.dx();
    Window w;
    w.lo = std::max(0, static_cast<int>(std::floor((xlo - grid.x_min) / dx - 0.5)));
    w.hi = std::min(grid.n - 1, static_cast<int>(std::ceil((xhi - grid.x_min) / dx - 0.5)));
    return w;
}

bool in_range(const WaveProfile& p, double xi) { return xi >= p.xi0 && xi <= p.xi_last(); }

// Shared per-layer quadrature: the projection integral plus the absolute
// integrals that build the a-priori rate bound.
struct LayerQuadrature {
    double projection = 0.0;  // Int a dv_i [ (p(v)-p(v~)) + p'(v_i)(v-v~) ] dx
    double abs_u = 0.0;       // Int a |dv_i| dx
    double abs_p = 0.0;       // Int a |p'(v_i) dv_i| dx
    double max_secant = 0.0;  // max |p(v)-p(v~)| / |v-v~| over the window
};

LayerQuadrature layer_quadrature(const GasModel& g, const CompositeWave& w, const FieldState& s,
                                 const Grid1D& grid, const ShiftState& shifts, int family) {
    const WaveProfile& wp = (family == 1) ? w.p1 : w.p2;
    const double d1 = w.p1.link.delta;
    const double d2 = w.p2.link.delta;
    const double dx = grid.dx();
    const Window win = support_window(wp, s.t, family == 1 ? shifts.X1 : shifts.X2, grid);

    LayerQuadrature q;
    for (int j = win.lo; j <= win.hi; ++j) {
        const double x = grid.x(j);
        const double xi1 = x - w.p1.link.sigma * s.t - shifts.X1;
        const double xi2 = x - w.p2.link.sigma * s.t - shifts.X2;
        const double xi_i = (family == 1) ? xi1 : xi2;
        if (!in_range(wp, xi_i)) continue;

        const ProfileSample s1 = eval(w.p1, xi1);
        const ProfileSample s2 = eval(w.p2, xi2);
        const PressurePair pp1 = pressure_pair(g, s1.v);
        const PressurePair pp2 = pressure_pair(g, s2.v);
        const ProfileSample& si = (family == 1) ? s1 : s2;
        const PressurePair& ppi = (family == 1) ? pp1 : pp2;

        const double dv = profile_rhs_pair(g, wp.link, si.v, ppi);
        const double a =
            1.0 + w.lambda1 * (w.p_mid - pp1.p) / d1 + w.lambda2 * (w.p_mid - pp2.p) / d2;
        const double vt = s1.v + s2.v - w.mid.v;
        const double pv = pressure(g, s.v[j]);
        const double pvt = pressure(g, vt);

        q.projection += a * dv * ((pv - pvt) + ppi.dp * (s.v[j] - vt));
        q.abs_u += a * std::abs(dv);
        q.abs_p += a * std::abs(ppi.dp * dv);
        const double dvol = s.v[j] - vt;
        if (dvol != 0.0) q.max_secant = std::max(q.max_secant, std::abs(pv - pvt) / std::abs(dvol));
    }
    q.projection *= dx;
    q.abs_u *= dx;
    q.abs_p *= dx;
    return q;
}

}  // namespace

double shift_constant_M(const GasModel& g, double v_m) {
    const PressurePair pp = pressure_pair(g, v_m);
    return 5.0 * (g.gamma + 1.0) / (8.0 * g.gamma * pp.p) * std::pow(-pp.dp, 1.5);
}

ShiftRates shift_rhs(const GasModel& g, const CompositeWave& w, const FieldState& s,
                     const Grid1D& grid, const ShiftState& shifts) {
    const double M = shift_constant_M(g, w.mid.v);
    const LayerQuadrature q1 = layer_quadrature(g, w, s, grid, shifts, 1);
    const LayerQuadrature q2 = layer_quadrature(g, w, s, grid, shifts, 2);
    ShiftRates r;
    r.X1dot = M / w.p1.link.delta * q1.projection;
    r.X2dot = M / w.p2.link.delta * q2.projection;
    return r;
}

void advance_shift(ShiftState& shifts, const ShiftRates& rates, double dt) {
    shifts.X1 += dt * rates.X1dot;
    shifts.X2 += dt * rates.X2dot;
    shifts.X1dot = rates.X1dot;
    shifts.X2dot = rates.X2dot;
}

double entropy_density(const GasModel& g, double v, double u, double Pi,
                       const CompositeState& ref) {
    const double du = u - ref.u;
    const double dPi = Pi - ref.Pi;
    return 0.5 * du * du + relative_H(g, v, ref.v) + g.tau * dPi * dPi / (2.0 * g.mu);
}

Functionals compute_functionals(const GasModel& g, const CompositeWave& w, const FieldState& s,
                                const Grid1D& grid, const ShiftState& shifts) {
    const int n = grid.n;
    const double dx = grid.dx();
    const double d1 = w.p1.link.delta;
    const double d2 = w.p2.link.delta;

    std::vector<double> pv(n), a_arr(n), dpvt(n), dvsum(n);
    Functionals f;
    for (int j = 0; j < n; ++j) {
        const double x = grid.x(j);
        const double xi1 = x - w.p1.link.sigma * s.t - shifts.X1;
        const double xi2 = x - w.p2.link.sigma * s.t - shifts.X2;
        const ProfileSample s1 = eval(w.p1, xi1);
        const ProfileSample s2 = eval(w.p2, xi2);
        const PressurePair pp1 = pressure_pair(g, s1.v);
        const PressurePair pp2 = pressure_pair(g, s2.v);
        const double vt = s1.v + s2.v - w.mid.v;
        const double ut = s1.u + s2.u - w.mid.u;
        const double Pt = s1.Pi + s2.Pi;
        const PressurePair ppt = pressure_pair(g, vt);
        const PressurePair ppv = pressure_pair(g, s.v[j]);
        const double a =
            1.0 + w.lambda1 * (w.p_mid - pp1.p) / d1 + w.lambda2 * (w.p_mid - pp2.p) / d2;
        const double dv1 = in_range(w.p1, xi1) ? profile_rhs_pair(g, w.p1.link, s1.v, pp1) : 0.0;
        const double dv2 = in_range(w.p2, xi2) ? profile_rhs_pair(g, w.p2.link, s2.v, pp2) : 0.0;

        // H(v) = v p(v) / (gamma - 1), so the relative potential needs no
        // further pow evaluations.
        const double relH =
            (s.v[j] * ppv.p - vt * ppt.p) / (g.gamma - 1.0) + ppt.p * (s.v[j] - vt);
        const double du = s.u[j] - ut;
        const double dPi = s.Pi[j] - Pt;
        const double eta = 0.5 * du * du + relH + g.tau * dPi * dPi / (2.0 * g.mu);

        f.E_weighted += a * eta;
        const double dvol = s.v[j] - vt;
        f.Gs += (std::abs(dv1) + std::abs(dv2)) * dvol * dvol;
        f.G += s.v[j] / g.mu * dPi * dPi;

        pv[j] = ppv.p;
        a_arr[j] = a;
        dpvt[j] = ppt.dp;
        dvsum[j] = dv1 + dv2;
    }

    // D needs the centered difference of p(v); ghost pressures are the exact
    // far-field values the composite tails approach.
    const double p_ghost_l = w.p1.link.p_left;
    const double p_ghost_r = w.p2.link.p_right;
    for (int j = 0; j < n; ++j) {
        const double pm = (j == 0) ? p_ghost_l : pv[j - 1];
        const double pp = (j == n - 1) ? p_ghost_r : pv[j + 1];
        const double d0p = (pp - pm) / (2.0 * dx);
        const double r = d0p - dpvt[j] * dvsum[j];
        f.D += a_arr[j] / (g.gamma * pv[j]) * r * r;
    }

    f.E_weighted *= dx;
    f.Gs *= dx;
    f.G *= dx;
    f.D *= dx;
    return f;
}

ErrorNorms error_norms(const GasModel& g, const CompositeWave& w, const FieldState& s,
                       const Grid1D& grid, const ShiftState& shifts) {
    const double dx = grid.dx();
    ErrorNorms e;
    double sv = 0.0, su = 0.0, sp = 0.0, sc = 0.0;
    for (int j = 0; j < grid.n; ++j) {
        const CompositeState cs = eval_composite(w, s.t, grid.x(j), shifts.X1, shifts.X2);
        const double dv = s.v[j] - cs.v;
        const double du = s.u[j] - cs.u;
        const double dPi = s.Pi[j] - cs.Pi;
        e.sup_v = std::max(e.sup_v, std::abs(dv));
        e.sup_u = std::max(e.sup_u, std::abs(du));
        e.sup_Pi = std::max(e.sup_Pi, std::abs(dPi));
        sv += dv * dv;
        su += du * du;
        sp += dPi * dPi;
        sc += dv * dv + du * du + g.tau * dPi * dPi;
    }
    e.l2_v = std::sqrt(sv * dx);
    e.l2_u = std::sqrt(su * dx);
    e.l2_Pi = std::sqrt(sp * dx);
    e.l2_combined = std::sqrt(sc * dx);
    return e;
}

bool check_separation(const CompositeWave& w, const ShiftState& shifts, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("check_separation: requires t > 0");
    const double s1t = w.p1.link.sigma * t;
    const double s2t = w.p2.link.sigma * t;
    return (shifts.X1 + s1t <= 0.5 * s1t) && (0.5 * s1t < 0.0) && (0.0 < 0.5 * s2t) &&
           (0.5 * s2t <= shifts.X2 + s2t);
}

Totals field_totals(const FieldState& s, const Grid1D& grid) {
    const double dx = grid.dx();
    Totals tot;
    for (int j = 0; j < grid.n; ++j) {
        tot.v += s.v[j];
        tot.u += s.u[j];
    }
    tot.v *= dx;
    tot.u *= dx;
    return tot;
}

const std::vector<std::string>& diagnostics_columns() {
    static const std::vector<std::string> cols = {
        "t",         "X1", "X2",        "X1dot",     "X2dot",      "E_weighted",
        "Gs",        "G",  "D",         "err_sup_v", "err_sup_u",  "err_sup_Pi",
        "err_L2",    "total_v",         "total_u"};
    return cols;
}

std::vector<double> diagnostics_values(const DiagnosticsRow& r) {
    return {r.t,  r.X1, r.X2, r.X1dot,     r.X2dot,     r.E_weighted, r.Gs,      r.G,
            r.D,  r.err_sup_v, r.err_sup_u, r.err_sup_Pi, r.err_L2,   r.total_v, r.total_u};
}

DiagnosticsRow make_diagnostics_row(const GasModel& g, const CompositeWave& w, const FieldState& s,
                                    const Grid1D& grid, const ShiftState& shifts) {
    const Functionals f = compute_functionals(g, w, s, grid, shifts);
    const ErrorNorms e = error_norms(g, w, s, grid, shifts);
    const Totals tot = field_totals(s, grid);
    DiagnosticsRow r;
    r.t = s.t;
    r.X1 = shifts.X1;
    r.X2 = shifts.X2;
    r.X1dot = shifts.X1dot;
    r.X2dot = shifts.X2dot;
    r.E_weighted = f.E_weighted;
    r.Gs = f.Gs;
    r.G = f.G;
    r.D = f.D;
    r.err_sup_v = e.sup_v;
    r.err_sup_u = e.sup_u;
    r.err_sup_Pi = e.sup_Pi;
    r.err_L2 = e.l2_combined;
    r.total_v = tot.v;
    r.total_u = tot.u;
    return r;
}

ShiftBound shift_bound(const GasModel& g, const CompositeWave& w, const FieldState& s,
                       const Grid1D& grid, const ShiftState& shifts) {
    const double M = shift_constant_M(g, w.mid.v);
    const LayerQuadrature q1 = layer_quadrature(g, w, s, grid, shifts, 1);
    const LayerQuadrature q2 = layer_quadrature(g, w, s, grid, shifts, 2);
    const double Lp = std::max(q1.max_secant, q2.max_secant);

    ShiftBound b;
    b.rate_sum = std::abs(M / w.p1.link.delta * q1.projection) +
                 std::abs(M / w.p2.link.delta * q2.projection);
    b.C_quad = M / w.p1.link.delta * (Lp * q1.abs_u + q1.abs_p) +
               M / w.p2.link.delta * (Lp * q2.abs_u + q2.abs_p);

    for (int j = 0; j < grid.n; ++j) {
        const CompositeState cs = eval_composite(w, s.t, grid.x(j), shifts.X1, shifts.X2);
        b.sup_v_err = std::max(b.sup_v_err, std::abs(s.v[j] - cs.v));
    }
    const double denom = b.C_quad * b.sup_v_err;
    b.ratio = denom > 0.0 ? b.rate_sum / denom : 0.0;
    return b;
}

}  // namespace rns
