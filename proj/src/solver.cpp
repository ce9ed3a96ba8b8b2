#include "rns/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rns/csv.hpp"
#include "rns/errors.hpp"

namespace rns {

namespace {

constexpr int kGhost = 2;  // ghost cells per side

double minmod(double a, double b) {
    if (a > 0.0 && b > 0.0) return std::min(a, b);
    if (a < 0.0 && b < 0.0) return std::max(a, b);
    return 0.0;
}

// Copies a field into an array padded with kGhost Dirichlet ghost cells per
// side.
void pad(const std::vector<double>& q, double left, double right, std::vector<double>& out) {
    const int n = static_cast<int>(q.size());
    out.resize(n + 2 * kGhost);
    out[0] = out[1] = left;
    std::copy(q.begin(), q.end(), out.begin() + kGhost);
    out[n + kGhost] = out[n + kGhost + 1] = right;
}

struct BoundaryFlux {
    double fv_left = 0.0, fv_right = 0.0;
    double fu_left = 0.0, fu_right = 0.0;
};

// Semi-discrete right-hand side for the convective system
//   v_t - u_x = 0,   u_t + (p(v) - Pi)_x = [viscous] (mu u_x / v)_x
// on padded arrays (size n + 4).  Writes d/dt into dvdt/dudt (size n) and
// returns the instantaneous fluxes through the two boundary faces.  The
// stress enters the momentum flux only when use_stress is set; the viscous
// flux is added only when viscous is set (classical stepper).
BoundaryFlux hyperbolic_rhs(const GasModel& g, const std::vector<double>& vp,
                            const std::vector<double>& up, const std::vector<double>& Pip,
                            const SolverConfig& cfg, double dx, bool use_stress, bool viscous,
                            std::vector<double>& dvdt, std::vector<double>& dudt) {
    const int n = static_cast<int>(vp.size()) - 2 * kGhost;
    dvdt.assign(n, 0.0);
    dudt.assign(n, 0.0);

    const bool muscl = cfg.recon == Reconstruction::minmod_muscl;
    const int nfaces = n + 1;  // face k sits between padded cells k and k+1, k in [1, n+1]

    std::vector<double> Fv(nfaces + 1, 0.0), Fu(nfaces + 1, 0.0);
    for (int k = 1; k <= n + 1; ++k) {
        double vL = vp[k], vR = vp[k + 1];
        double uL = up[k], uR = up[k + 1];
        double PiL = Pip[k], PiR = Pip[k + 1];
        if (muscl) {
            const double sv_k = minmod(vp[k] - vp[k - 1], vp[k + 1] - vp[k]);
            const double sv_k1 = minmod(vp[k + 1] - vp[k], vp[k + 2] - vp[k + 1]);
            const double su_k = minmod(up[k] - up[k - 1], up[k + 1] - up[k]);
            const double su_k1 = minmod(up[k + 1] - up[k], up[k + 2] - up[k + 1]);
            vL += 0.5 * sv_k;
            vR -= 0.5 * sv_k1;
            uL += 0.5 * su_k;
            uR -= 0.5 * su_k1;
            if (use_stress) {
                const double sp_k = minmod(Pip[k] - Pip[k - 1], Pip[k + 1] - Pip[k]);
                const double sp_k1 = minmod(Pip[k + 1] - Pip[k], Pip[k + 2] - Pip[k + 1]);
                PiL += 0.5 * sp_k;
                PiR -= 0.5 * sp_k1;
            }
        }
        if (!(vL > 0.0) || !(vR > 0.0)) {
            throw SolverBlowupError("reconstructed volume nonpositive near face " +
                                    std::to_string(k - kGhost));
        }
        const auto ppL = pressure_pair(g, vL);
        const auto ppR = pressure_pair(g, vR);
        // Characteristic speed sqrt(-p'(v)) = sqrt(gamma p / v); it decreases
        // in v while minmod keeps face states inside the neighboring-cell
        // hull, so the max over the two face states bounds the local fan.
        const double alpha =
            std::sqrt(std::max(g.gamma * ppL.p / vL, g.gamma * ppR.p / vR));
        const double fluxvL = -uL, fluxvR = -uR;
        const double fluxuL = ppL.p - (use_stress ? PiL : 0.0);
        const double fluxuR = ppR.p - (use_stress ? PiR : 0.0);
        Fv[k] = 0.5 * (fluxvL + fluxvR) - 0.5 * alpha * (vR - vL);
        Fu[k] = 0.5 * (fluxuL + fluxuR) - 0.5 * alpha * (uR - uL);
        if (viscous) {
            // Conservative viscous flux -mu u_x / v through face k, centered
            // cell values (second order on the uniform grid).
            const double v_face = 0.5 * (vp[k] + vp[k + 1]);
            Fu[k] -= g.mu * (up[k + 1] - up[k]) / (dx * v_face);
        }
    }

    for (int j = 0; j < n; ++j) {
        const int p = j + kGhost;
        dvdt[j] = (Fv[p - 1] - Fv[p]) / dx;
        dudt[j] = (Fu[p - 1] - Fu[p]) / dx;
    }

    BoundaryFlux bf;
    bf.fv_left = Fv[1];
    bf.fv_right = Fv[n + 1];
    bf.fu_left = Fu[1];
    bf.fu_right = Fu[n + 1];
    return bf;
}

// Exact solution of tau Pi_t = mu u_x - v Pi over dt with u and v frozen:
// exponential decay toward the local equilibrium stress mu u_x / v (centered
// u_x with far-field ghosts).  With tau = 0 the exponent is -inf and the
// update lands on equilibrium exactly.
void relax_exact(const GasModel& g, FieldState& s, const SolverConfig& cfg, double dx, double dt) {
    const int n = static_cast<int>(s.v.size());
    std::vector<double> Pi_new(n);
    for (int j = 0; j < n; ++j) {
        const double um = (j == 0) ? cfg.bc.left.u : s.u[j - 1];
        const double up = (j == n - 1) ? cfg.bc.right.u : s.u[j + 1];
        const double ux = (up - um) / (2.0 * dx);
        const double Pi_eq = g.mu * ux / s.v[j];
        if (g.tau == 0.0) {
            Pi_new[j] = Pi_eq;
        } else {
            const double decay = std::exp(-s.v[j] * dt / g.tau);
            Pi_new[j] = Pi_eq + (s.Pi[j] - Pi_eq) * decay;
        }
    }
    s.Pi = std::move(Pi_new);
}

void validate_state(const FieldState& s) {
    const int n = static_cast<int>(s.v.size());
    for (int j = 0; j < n; ++j) {
        if (!std::isfinite(s.v[j]) || !std::isfinite(s.u[j]) || !std::isfinite(s.Pi[j])) {
            throw SolverBlowupError("non-finite field at cell " + std::to_string(j) + ", t = " +
                                    fmt17(s.t));
        }
        if (!(s.v[j] > 0.0)) {
            throw SolverBlowupError("nonpositive volume " + fmt17(s.v[j]) + " at cell " +
                                    std::to_string(j) + ", t = " + fmt17(s.t));
        }
    }
}

void check_sizes(const FieldState& s, const Grid1D& grid) {
    const auto n = static_cast<size_t>(grid.n);
    if (grid.n <= 0) throw ConfigError("grid has no cells");
    if (s.v.size() != n || s.u.size() != n || s.Pi.size() != n) {
        throw ConfigError("state size does not match grid (" + std::to_string(s.v.size()) +
                          " vs " + std::to_string(grid.n) + ")");
    }
}

// Heun (SSP-RK2) update of (v, u) with the stress field frozen in time;
// flux accumulation weights each stage by dt/2.
void heun_convective(const GasModel& g, FieldState& s, const Grid1D& grid, const SolverConfig& cfg,
                     double dt, bool use_stress, bool viscous, StepFluxes* flux) {
    const int n = grid.n;
    const double dx = grid.dx();

    std::vector<double> vp, up, Pip;
    pad(s.v, cfg.bc.left.v, cfg.bc.right.v, vp);
    pad(s.u, cfg.bc.left.u, cfg.bc.right.u, up);
    pad(s.Pi, 0.0, 0.0, Pip);

    std::vector<double> k1v, k1u, k2v, k2u;
    const BoundaryFlux bf1 =
        hyperbolic_rhs(g, vp, up, Pip, cfg, dx, use_stress, viscous, k1v, k1u);

    std::vector<double> v1(n), u1(n);
    for (int j = 0; j < n; ++j) {
        v1[j] = s.v[j] + dt * k1v[j];
        u1[j] = s.u[j] + dt * k1u[j];
        if (!(v1[j] > 0.0)) {
            throw SolverBlowupError("nonpositive predictor volume at cell " + std::to_string(j) +
                                    ", t = " + fmt17(s.t));
        }
    }

    std::vector<double> vp1, up1;
    pad(v1, cfg.bc.left.v, cfg.bc.right.v, vp1);
    pad(u1, cfg.bc.left.u, cfg.bc.right.u, up1);
    const BoundaryFlux bf2 =
        hyperbolic_rhs(g, vp1, up1, Pip, cfg, dx, use_stress, viscous, k2v, k2u);

    for (int j = 0; j < n; ++j) {
        s.v[j] += 0.5 * dt * (k1v[j] + k2v[j]);
        s.u[j] += 0.5 * dt * (k1u[j] + k2u[j]);
    }

    if (flux != nullptr) {
        flux->v_left += 0.5 * dt * (bf1.fv_left + bf2.fv_left);
        flux->v_right += 0.5 * dt * (bf1.fv_right + bf2.fv_right);
        flux->u_left += 0.5 * dt * (bf1.fu_left + bf2.fu_left);
        flux->u_right += 0.5 * dt * (bf1.fu_right + bf2.fu_right);
    }
}

}  // namespace

double max_signal_speed(const GasModel& g, const FieldState& s) {
    double vmin = std::numeric_limits<double>::infinity();
    for (const double v : s.v) vmin = std::min(vmin, v);
    if (!(vmin > 0.0)) throw SolverBlowupError("nonpositive volume in max_signal_speed");
    // -p'(v) is largest at the smallest volume.
    const double c2 = -dpressure(g, vmin);
    return std::sqrt(g.mu / g.tau + c2);
}

double conservation_drift(double total_initial, double total_final, double flux_left,
                          double flux_right) {
    const double drift = total_final - total_initial - (flux_left - flux_right);
    return std::abs(drift) / std::max(1.0, std::abs(total_initial));
}

double stable_dt(const GasModel& g, const FieldState& s, const Grid1D& grid,
                 const SolverConfig& cfg) {
    check_sizes(s, grid);
    if (!(cfg.cfl > 0.0)) throw ConfigError("cfl must be positive");
    const double dx = grid.dx();
    if (cfg.stepper == Stepper::relaxed) {
        if (g.tau <= 0.0) throw ConfigError("relaxed stepper requires tau > 0");
        return cfg.cfl * dx / max_signal_speed(g, s);
    }
    if (!(cfg.diffusion_cfl > 0.0)) throw ConfigError("diffusion_cfl must be positive");
    double vmin = std::numeric_limits<double>::infinity();
    for (const double v : s.v) vmin = std::min(vmin, v);
    if (!(vmin > 0.0)) throw SolverBlowupError("nonpositive volume in stable_dt");
    const double adv = cfg.cfl * dx / std::sqrt(-dpressure(g, vmin));
    const double diff = cfg.diffusion_cfl * dx * dx * vmin / (2.0 * g.mu);
    return std::min(adv, diff);
}

void step_relaxed(const GasModel& g, FieldState& s, const Grid1D& grid, const SolverConfig& cfg,
                  double dt, StepFluxes* flux) {
    check_sizes(s, grid);
    if (!(dt > 0.0)) throw ConfigError("step size must be positive");
    const double dx = grid.dx();
    relax_exact(g, s, cfg, dx, 0.5 * dt);
    heun_convective(g, s, grid, cfg, dt, /*use_stress=*/true, /*viscous=*/false, flux);
    relax_exact(g, s, cfg, dx, 0.5 * dt);
    s.t += dt;
    validate_state(s);
}

void step_classical(const GasModel& g, FieldState& s, const Grid1D& grid, const SolverConfig& cfg,
                    double dt, StepFluxes* flux) {
    check_sizes(s, grid);
    if (!(dt > 0.0)) throw ConfigError("step size must be positive");
    heun_convective(g, s, grid, cfg, dt, /*use_stress=*/false, /*viscous=*/true, flux);
    s.t += dt;
    validate_state(s);
}

void step_relaxed(const GasModel& g, FieldState& s, const Grid1D& grid, const SolverConfig& cfg) {
    SolverConfig c = cfg;
    c.stepper = Stepper::relaxed;
    step_relaxed(g, s, grid, cfg, stable_dt(g, s, grid, c));
}

void step_classical(const GasModel& g, FieldState& s, const Grid1D& grid, const SolverConfig& cfg) {
    SolverConfig c = cfg;
    c.stepper = Stepper::classical;
    step_classical(g, s, grid, cfg, stable_dt(g, s, grid, c));
}

double Perturbation::operator()(double x) const {
    if (kind == Kind::none || amplitude == 0.0) return 0.0;
    const double r = (x - center) / width;
    return amplitude * std::exp(-r * r);
}

FieldState init_from_composite(const GasModel& g, const CompositeWave& w, const Grid1D& grid,
                               const Perturbation& pert) {
    (void)g;  // sampling needs no constitutive evaluation
    if (grid.n <= 0) throw ConfigError("grid has no cells");
    FieldState s;
    s.t = 0.0;
    s.v.resize(grid.n);
    s.u.resize(grid.n);
    s.Pi.resize(grid.n);
    for (int j = 0; j < grid.n; ++j) {
        const CompositeState cs = eval_composite(w, 0.0, grid.x(j), 0.0, 0.0);
        s.v[j] = cs.v;
        s.u[j] = cs.u;
        s.Pi[j] = cs.Pi;
    }
    const EndState& far_l = w.p1.link.left;
    const EndState& far_r = w.p2.link.right;
    constexpr double tail_tol = 1e-8;
    if (std::abs(s.v.front() - far_l.v) > tail_tol || std::abs(s.u.front() - far_l.u) > tail_tol ||
        std::abs(s.v.back() - far_r.v) > tail_tol || std::abs(s.u.back() - far_r.u) > tail_tol) {
        throw DomainTooSmallError(
            "composite wave does not reach its far field at the domain boundary; widen [" +
            fmt17(grid.x_min) + ", " + fmt17(grid.x_max) + "]");
    }
    if (pert.kind != Perturbation::Kind::none) {
        for (int j = 0; j < grid.n; ++j) {
            const double b = pert(grid.x(j));
            if (pert.target == Perturbation::Target::v || pert.target == Perturbation::Target::both)
                s.v[j] += b;
            if (pert.target == Perturbation::Target::u || pert.target == Perturbation::Target::both)
                s.u[j] += b;
        }
        for (int j = 0; j < grid.n; ++j) {
            if (!(s.v[j] > 0.0)) {
                throw VacuumError("perturbation drives the volume nonpositive at x = " +
                                  fmt17(grid.x(j)));
            }
        }
    }
    return s;
}

FieldState run(const GasModel& g, FieldState s, const Grid1D& grid, const SolverConfig& cfg,
               double t_end, std::vector<Observer> observers, PreStepHook pre_step,
               RunStats* stats) {
    check_sizes(s, grid);
    for (const Observer& ob : observers) {
        if (!(ob.interval > 0.0)) throw ConfigError("observer interval must be positive");
        if (!ob.fn) throw ConfigError("observer has no callback");
    }
    if (t_end < s.t) throw ConfigError("t_end precedes the state time");

    std::vector<double> next_t(observers.size());
    for (size_t i = 0; i < observers.size(); ++i) {
        observers[i].fn(s);
        next_t[i] = s.t + observers[i].interval;
    }

    const double t_eps = 1e-12 * std::max(1.0, std::abs(t_end));
    const double btol = 1e-6 * cfg.boundary_tol_scale;
    long steps = 0;
    while (t_end - s.t > t_eps) {
        const double dt_max = stable_dt(g, s, grid, cfg);
        const bool final_step = (t_end - s.t) <= dt_max;
        const double dt = final_step ? (t_end - s.t) : dt_max;
        if (pre_step) pre_step(s, dt);
        try {
            if (cfg.stepper == Stepper::relaxed) {
                step_relaxed(g, s, grid, cfg, dt, stats != nullptr ? &stats->flux : nullptr);
            } else {
                step_classical(g, s, grid, cfg, dt, stats != nullptr ? &stats->flux : nullptr);
            }
        } catch (const SolverBlowupError& e) {
            throw SolverBlowupError(std::string(e.what()) + " (step " + std::to_string(steps) +
                                    ")");
        }
        ++steps;
        if (final_step) s.t = t_end;
        if (stats != nullptr) stats->steps = steps;

        if (std::abs(s.v.front() - cfg.bc.left.v) > btol ||
            std::abs(s.v.back() - cfg.bc.right.v) > btol) {
            throw DomainTooSmallError("wave reached the domain boundary at t = " + fmt17(s.t) +
                                      "; widen the domain or shorten the run");
        }

        for (size_t i = 0; i < observers.size(); ++i) {
            while (s.t >= next_t[i] - 1e-9 * observers[i].interval) {
                observers[i].fn(s);
                next_t[i] += observers[i].interval;
            }
        }
    }
    return s;
}

}  // namespace rns
