#include "rns/profile.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "rns/csv.hpp"

namespace rns {

namespace {

// h, h' and the ODE right-hand side with the link's cached upstream pressure.
struct RhsEval {
    double h;
    double hp;
    double rhs;
};

RhsEval rhs_parts_pp(const GasModel& g, const ShockLink& link, double v, const PressurePair& pp) {
    const double s2 = link.sigma * link.sigma;
    const double h = s2 * (link.left.v - v) + (link.p_left - pp.p);
    const double hp = -s2 - pp.dp;
    const double denom = g.mu + g.tau * hp;
    if (!(denom > 0.0))
        throw AdmissibilityError("profile equation degenerate: mu + tau h'(v) = " + fmt17(denom) +
                                 " at v = " + fmt17(v));
    return {h, hp, v * h / (link.sigma * denom)};
}

RhsEval rhs_parts(const GasModel& g, const ShockLink& link, double v) {
    return rhs_parts_pp(g, link, v, pressure_pair(g, v));
}

double rk4_step(const GasModel& g, const ShockLink& link, double v, double step) {
    const double k1 = rhs_parts(g, link, v).rhs;
    const double k2 = rhs_parts(g, link, v + 0.5 * step * k1).rhs;
    const double k3 = rhs_parts(g, link, v + 0.5 * step * k2).rhs;
    const double k4 = rhs_parts(g, link, v + step * k3).rhs;
    return v + step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

double profile_rhs(const GasModel& g, const ShockLink& link, double v) {
    require_positive_volume(v, "profile_rhs");
    return rhs_parts(g, link, v).rhs;
}

double profile_rhs_pair(const GasModel& g, const ShockLink& link, double v,
                        const PressurePair& pp) {
    require_positive_volume(v, "profile_rhs_pair");
    return rhs_parts_pp(g, link, v, pp).rhs;
}

double reconstruct_Pi(const GasModel& g, const ShockLink& link, double v, double dv_dxi) {
    require_positive_volume(v, "reconstruct_Pi");
    const double s = link.sigma;
    return (s * s * s * g.tau + s * g.tau * dpressure(g, v) - g.mu * s) / v * dv_dxi;
}

WaveProfile solve_profile(const GasModel& g, const ShockLink& link, double dxi, double tail_tol) {
    if (!(link.delta > 0.0))
        throw DegenerateShockError("solve_profile: link has zero pressure strength");
    if (dxi <= 0.0) dxi = 0.02 / link.delta;
    if (!(tail_tol > 0.0)) throw std::invalid_argument("solve_profile: tail_tol must be positive");

    const double vb = link.left.v;   // end state as xi -> -inf
    const double vf = link.right.v;  // end state as xi -> +inf
    const double threshold = tail_tol * link.delta;
    const double xi_budget = 1e3 / link.delta;
    const double v_mid = 0.5 * (vb + vf);

    std::deque<double> samples;
    samples.push_back(v_mid);
    size_t n_back = 0;

    // Forward sweep toward link.right.v, backward sweep toward link.left.v.
    for (const int dir : {+1, -1}) {
        const double target = dir > 0 ? vf : vb;
        double v = v_mid;
        double xi = 0.0;
        while (std::abs(v - target) >= threshold) {
            xi += dxi;
            if (xi > xi_budget)
                throw ProfileDivergenceError("profile tail failed to close within |xi| <= " +
                                             fmt17(xi_budget) + " (family " +
                                             std::to_string(link.family) + ")");
            v = rk4_step(g, link, v, dir * dxi);
            if (dir > 0) {
                samples.push_back(v);
            } else {
                samples.push_front(v);
                ++n_back;
            }
        }
    }

    WaveProfile w;
    w.link = link;
    w.gas = g;
    w.dxi = dxi;
    w.xi0 = -dxi * static_cast<double>(n_back);

    const size_t n = samples.size();
    w.xi.resize(n);
    w.v.assign(samples.begin(), samples.end());
    w.u.resize(n);
    w.Pi.resize(n);
    for (size_t i = 0; i < n; ++i) {
        w.xi[i] = w.xi0 + dxi * static_cast<double>(i);
        w.u[i] = link.left.u + link.sigma * (link.left.v - w.v[i]);
        w.Pi[i] = reconstruct_Pi(g, link, w.v[i], profile_rhs(g, link, w.v[i]));
    }
    w.clamp_left = link.left;
    w.clamp_right = link.right;

    // Post-solve verification: tail closure and strict monotonicity in the
    // family's direction (volume decreasing for family 1, increasing for 2).
    if (!(std::abs(w.v.front() - vb) <= threshold && std::abs(w.v.back() - vf) <= threshold))
        throw ProfileDivergenceError("profile tails did not close to tolerance");
    const double dir = link.family == 1 ? -1.0 : 1.0;
    for (size_t i = 0; i + 1 < n; ++i)
        if (!(dir * (w.v[i + 1] - w.v[i]) > 0.0))
            throw ProfileDivergenceError("profile lost strict monotonicity at sample " +
                                         std::to_string(i));
    return w;
}

ProfileSample eval(const WaveProfile& w, double xi) {
    if (xi < w.xi0) return {w.clamp_left.v, w.clamp_left.u, 0.0};
    if (xi > w.xi_last()) return {w.clamp_right.v, w.clamp_right.u, 0.0};
    const double s = (xi - w.xi0) / w.dxi;
    const auto k = std::min(static_cast<size_t>(s), w.v.size() - 1);
    const size_t k1 = std::min(k + 1, w.v.size() - 1);
    const double t = s - static_cast<double>(k);
    return {w.v[k] + t * (w.v[k1] - w.v[k]), w.u[k] + t * (w.u[k1] - w.u[k]),
            w.Pi[k] + t * (w.Pi[k1] - w.Pi[k])};
}

double eval_dv(const WaveProfile& w, double xi) {
    if (xi < w.xi0 || xi > w.xi_last()) return 0.0;
    const double s = (xi - w.xi0) / w.dxi;
    const auto k = std::min(static_cast<size_t>(s), w.v.size() - 1);
    const size_t k1 = std::min(k + 1, w.v.size() - 1);
    const double t = s - static_cast<double>(k);
    const double v = w.v[k] + t * (w.v[k1] - w.v[k]);
    // Interpolation keeps v between the end volumes, where the rhs denominator
    // was already verified positive during the solve.
    return profile_rhs(w.gas, w.link, v);
}

DecayReport check_decay(const WaveProfile& w) {
    DecayReport rep;
    const double lo = 1e-8 * w.link.delta;
    const double hi = 1e-2 * w.link.delta;

    // Right tail: deviation from clamp_right shrinking as xi grows.
    std::vector<double> xs, ys, yp;
    for (size_t i = 0; i < w.v.size(); ++i) {
        const double dev = std::abs(w.v[i] - w.clamp_right.v);
        if (dev >= lo && dev <= hi && w.xi[i] > 0.0) {
            xs.push_back(w.xi[i]);
            ys.push_back(std::log(dev));
            yp.push_back(std::log(std::max(std::abs(w.Pi[i]), 1e-300)));
        }
    }
    rep.n_right = static_cast<int>(xs.size());
    if (rep.n_right >= 2) {
        rep.rate_right = -ls_slope(xs, ys);
        rep.pi_rate_right = -ls_slope(xs, yp);
    }

    xs.clear();
    ys.clear();
    yp.clear();
    for (size_t i = 0; i < w.v.size(); ++i) {
        const double dev = std::abs(w.v[i] - w.clamp_left.v);
        if (dev >= lo && dev <= hi && w.xi[i] < 0.0) {
            xs.push_back(-w.xi[i]);
            ys.push_back(std::log(dev));
            yp.push_back(std::log(std::max(std::abs(w.Pi[i]), 1e-300)));
        }
    }
    rep.n_left = static_cast<int>(xs.size());
    if (rep.n_left >= 2) {
        rep.rate_left = -ls_slope(xs, ys);
        rep.pi_rate_left = -ls_slope(xs, yp);
    }

    rep.conclusive = rep.n_left >= 8 && rep.n_right >= 8;
    return rep;
}

}  // namespace rns
