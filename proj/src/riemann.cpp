#include "rns/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rns/csv.hpp"

namespace rns {

namespace {

constexpr double kDegenerateWidth = 1e-12;

void check_family(int family) {
    if (family != 1 && family != 2)
        throw std::invalid_argument("shock family must be 1 or 2, got " + std::to_string(family));
}

void check_lax(int family, double vl, double vr) {
    if (std::abs(vl - vr) < kDegenerateWidth)
        throw DegenerateShockError("shock of zero strength: vl=" + fmt17(vl) + " vr=" + fmt17(vr));
    if (family == 1 && !(vr < vl))
        throw AdmissibilityError("family-1 shock needs vr < vl, got vl=" + fmt17(vl) + " vr=" + fmt17(vr));
    if (family == 2 && !(vr > vl))
        throw AdmissibilityError("family-2 shock needs vr > vl, got vl=" + fmt17(vl) + " vr=" + fmt17(vr));
}

// Velocity drop across a shock between volumes va, vb (order-insensitive):
// sqrt((p(v_small) - p(v_large)) * (v_large - v_small)).
double jump_drop(const GasModel& g, double va, double vb) {
    const double vs = std::min(va, vb);
    const double vl = std::max(va, vb);
    return std::sqrt((pressure(g, vs) - pressure(g, vl)) * (vl - vs));
}

// d/dv of jump_drop(v, vref) for v < vref.
double jump_drop_dv(const GasModel& g, double v, double vref) {
    const double d = jump_drop(g, v, vref);
    return (dpressure(g, v) * (vref - v) - (pressure(g, v) - pressure(g, vref))) / (2.0 * d);
}

}  // namespace

double shock_speed(const GasModel& g, int family, double vl, double vr) {
    check_family(family);
    require_positive_volume(vl, "shock_speed");
    require_positive_volume(vr, "shock_speed");
    check_lax(family, vl, vr);
    const double magnitude = std::sqrt((pressure(g, vl) - pressure(g, vr)) / (vr - vl));
    return family == 1 ? -magnitude : magnitude;
}

double hugoniot_velocity_drop(const GasModel& g, int family, double vl, double vr) {
    check_family(family);
    require_positive_volume(vl, "hugoniot_velocity_drop");
    require_positive_volume(vr, "hugoniot_velocity_drop");
    check_lax(family, vl, vr);
    return jump_drop(g, vl, vr);
}

ShockLink make_shock_link(const GasModel& g, int family, EndState left, EndState right) {
    ShockLink link;
    link.family = family;
    link.left = left;
    link.right = right;
    link.sigma = shock_speed(g, family, left.v, right.v);
    link.p_left = pressure(g, left.v);
    link.p_right = pressure(g, right.v);
    link.delta = std::abs(link.p_left - link.p_right);
    return link;
}

RiemannSolution solve_midstate(const GasModel& g, EndState left, EndState right) {
    require_positive_volume(left.v, "solve_midstate");
    require_positive_volume(right.v, "solve_midstate");

    const double vmin = std::min(left.v, right.v);
    const auto phi = [&](double v) {
        return left.u - jump_drop(g, v, left.v) - jump_drop(g, v, right.v) - right.u;
    };
    const auto dphi = [&](double v) {
        return -jump_drop_dv(g, v, left.v) - jump_drop_dv(g, v, right.v);
    };

    // Phi is strictly increasing in v on (0, vmin]; its value at zero strength
    // decides membership in the double-shock region.
    if (!(phi(vmin) > 0.0))
        throw NotDoubleShockError("data not in the double-shock region: velocity drop " +
                                  fmt17(left.u - right.u) + " does not exceed the zero-strength drop");

    double lo = 1e-6 * vmin;
    double hi = vmin;
    if (phi(lo) > 0.0)
        throw VacuumError("middle state below the vacuum guard " + fmt17(lo));

    while (hi - lo > 1e-14) {
        const double mid = 0.5 * (lo + hi);
        if (phi(mid) > 0.0)
            hi = mid;
        else
            lo = mid;
    }

    double vm = 0.5 * (lo + hi);
    for (int it = 0; it < 3; ++it) {
        const double next = vm - phi(vm) / dphi(vm);
        vm = std::clamp(next, lo, hi);
    }

    const double residual_scale = 1.0 + std::abs(left.u) + std::abs(right.u);
    if (!(std::abs(phi(vm)) <= 1e-12 * residual_scale))
        throw std::logic_error("solve_midstate: residual " + fmt17(phi(vm)) + " did not converge");

    RiemannSolution sol;
    sol.left = left;
    sol.right = right;
    sol.mid = EndState{vm, left.u - jump_drop(g, vm, left.v)};
    sol.link1 = make_shock_link(g, 1, left, sol.mid);
    sol.link2 = make_shock_link(g, 2, sol.mid, right);
    return sol;
}

TauCheck check_tau_admissible(const GasModel& g, const RiemannSolution& sol, int samples) {
    if (samples < 2) throw std::invalid_argument("check_tau_admissible: need at least 2 samples");
    double bound = 1.0;
    // Sample mu/|sigma^2 + p'(v)| over each link's volume bracket.
    for (const ShockLink* link : {&sol.link1, &sol.link2}) {
        const double a = std::min(link->left.v, link->right.v);
        const double c = std::max(link->left.v, link->right.v);
        const double s2 = link->sigma * link->sigma;
        for (int k = 0; k < samples; ++k) {
            const double v = a + (c - a) * static_cast<double>(k) / static_cast<double>(samples - 1);
            const double q = std::abs(s2 + dpressure(g, v));
            if (q > 0.0) bound = std::min(bound, g.mu / q);
        }
    }
    return TauCheck{bound, g.tau <= bound};
}

}  // namespace rns
