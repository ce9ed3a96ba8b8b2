#include "rns/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>

#include "rns/csv.hpp"
#include "rns/errors.hpp"

namespace fs = std::filesystem;

namespace rns {

namespace {

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
}

double parse_lambda(const KeyValueConfig& cfg, const std::string& key) {
    const std::string text = cfg.get_string(key, "auto");
    if (text == "auto") return 0.0;
    const char* begin = text.c_str();
    char* end = nullptr;
    const double x = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ConfigError("key '" + key + "': expected a number or 'auto', got '" + text + "'");
    if (!(x > 0.0)) throw ConfigError("key '" + key + "': must be positive, got " + text);
    return x;
}

// Centered u_x with far-field ghosts; the same stencil the relaxation substep
// equilibrates toward.
double centered_ux(const FieldState& s, const FarField& bc, double dx, int j) {
    const int n = static_cast<int>(s.u.size());
    const double um = (j == 0) ? bc.left.u : s.u[j - 1];
    const double up = (j == n - 1) ? bc.right.u : s.u[j + 1];
    return (up - um) / (2.0 * dx);
}

std::string run_summary(const StabilityResult& res, const Grid1D& grid) {
    const DiagnosticsRow& last = res.rows.back();
    const double drift_v = conservation_drift(res.initial_totals.v, last.total_v,
                                              res.stats.flux.v_left, res.stats.flux.v_right);
    const double drift_u = conservation_drift(res.initial_totals.u, last.total_u,
                                              res.stats.flux.u_left, res.stats.flux.u_right);
    std::string r;
    r += "final time                : " + fmt17(last.t) + "\n";
    r += "steps                     : " + std::to_string(res.stats.steps) + "\n";
    r += "grid cells                : " + std::to_string(grid.n) + "\n";
    r += "shifts X1, X2             : " + fmt17(last.X1) + ", " + fmt17(last.X2) + "\n";
    r += "shift rates X1dot, X2dot  : " + fmt17(last.X1dot) + ", " + fmt17(last.X2dot) + "\n";
    r += "weighted entropy E        : " + fmt17(last.E_weighted) + "\n";
    r += "sup errors (v, u, Pi)     : " + fmt17(last.err_sup_v) + ", " + fmt17(last.err_sup_u) +
         ", " + fmt17(last.err_sup_Pi) + "\n";
    r += "combined L2 error         : " + fmt17(last.err_L2) + "\n";
    r += "conservation drift (v, u) : " + fmt17(drift_v) + ", " + fmt17(drift_u) + "\n";
    return r;
}

}  // namespace

ExperimentParams ExperimentParams::from_config(const KeyValueConfig& cfg) {
    ExperimentParams p;
    const double gamma = cfg.get_double("gamma", 1.4);
    const double mu = cfg.get_double("mu", 1.0);
    const double tau = cfg.get_double("tau", 0.01);
    p.gas = GasModel(gamma, mu, tau);

    p.left.v = cfg.get_double("v_minus", 1.1);
    p.left.u = cfg.get_double("u_minus", 0.2);
    p.right.v = cfg.get_double("v_plus", 1.1);
    p.right.u = cfg.get_double("u_plus", -0.2);
    if (!(p.left.v > 0.0) || !(p.right.v > 0.0))
        throw ConfigError("end-state volumes must be positive");

    p.grid.x_min = cfg.get_double("x_min", -400.0);
    p.grid.x_max = cfg.get_double("x_max", 400.0);
    p.grid.n = cfg.get_int("n", 8000);
    if (!(p.grid.x_max > p.grid.x_min)) throw ConfigError("x_max must exceed x_min");
    if (p.grid.n < 16) throw ConfigError("n must be at least 16");

    p.t_end = cfg.get_double("t_end", 200.0);
    if (!(p.t_end >= 0.0)) throw ConfigError("t_end must be nonnegative");
    p.cfl = cfg.get_double("cfl", 0.45);
    p.diffusion_cfl = cfg.get_double("diffusion_cfl", 0.4);
    if (!(p.cfl > 0.0) || !(p.diffusion_cfl > 0.0))
        throw ConfigError("cfl and diffusion_cfl must be positive");

    const std::string recon = cfg.get_string("reconstruction", "minmod");
    if (recon == "minmod") {
        p.recon = Reconstruction::minmod_muscl;
    } else if (recon == "none") {
        p.recon = Reconstruction::none;
    } else {
        throw ConfigError("reconstruction must be 'minmod' or 'none', got '" + recon + "'");
    }

    p.diag_interval = cfg.get_double("diag_interval", 0.5);
    p.snapshot_interval = cfg.get_double("snapshot_interval", 50.0);
    if (!(p.diag_interval > 0.0) || !(p.snapshot_interval > 0.0))
        throw ConfigError("diag_interval and snapshot_interval must be positive");

    const std::string kind = cfg.get_string("perturb_kind", "none");
    if (kind == "none") {
        p.pert.kind = Perturbation::Kind::none;
    } else if (kind == "gauss") {
        p.pert.kind = Perturbation::Kind::gauss;
    } else {
        throw ConfigError("perturb_kind must be 'none' or 'gauss', got '" + kind + "'");
    }
    const std::string target = cfg.get_string("perturb_target", "v");
    if (target == "v") {
        p.pert.target = Perturbation::Target::v;
    } else if (target == "u") {
        p.pert.target = Perturbation::Target::u;
    } else if (target == "both") {
        p.pert.target = Perturbation::Target::both;
    } else {
        throw ConfigError("perturb_target must be 'v', 'u', or 'both', got '" + target + "'");
    }
    p.pert.amplitude = cfg.get_double("perturb_amplitude", 0.01);
    p.pert.center = cfg.get_double("perturb_center", 0.0);
    p.pert.width = cfg.get_double("perturb_width", 5.0);
    if (!(p.pert.width > 0.0)) throw ConfigError("perturb_width must be positive");

    p.lambda1 = parse_lambda(cfg, "lambda1");
    p.lambda2 = parse_lambda(cfg, "lambda2");

    p.profile_dxi = cfg.get_double("profile_dxi", 0.0);
    if (p.profile_dxi < 0.0) throw ConfigError("profile_dxi must be nonnegative");
    p.profile_tail_tol = cfg.get_double("profile_tail_tol", 1e-10);
    if (!(p.profile_tail_tol > 0.0)) throw ConfigError("profile_tail_tol must be positive");

    p.tau_list = cfg.get_double_list("tau_list", {1e-2, 1e-3, 1e-4});
    for (const double t : p.tau_list) {
        if (!(t > 0.0)) throw ConfigError("tau_list entries must be positive");
    }

    const std::vector<std::string> unknown = cfg.unconsumed();
    if (!unknown.empty()) {
        std::string msg = "unknown config key(s):";
        for (const std::string& k : unknown) msg += " " + k;
        throw ConfigError(msg);
    }
    return p;
}

RiemannResult cmd_riemann(const ExperimentParams& p, const KeyValueConfig& cfg,
                          const std::string& out_dir) {
    RiemannResult res;
    res.sol = solve_midstate(p.gas, p.left, p.right);
    res.tau = check_tau_admissible(p.gas, res.sol);

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        const fs::path out(out_dir);
        write_text(out / "config.echo", cfg.echo());
        CsvWriter csv((out / "riemann.csv").string(),
                      {"v_m", "u_m", "sigma1", "sigma2", "delta1", "delta2", "tau_max"});
        csv.row({res.sol.mid.v, res.sol.mid.u, res.sol.link1.sigma, res.sol.link2.sigma,
                 res.sol.link1.delta, res.sol.link2.delta, res.tau.tau_max});
        std::string r;
        r += "middle state v_m, u_m : " + fmt17(res.sol.mid.v) + ", " + fmt17(res.sol.mid.u) +
             "\n";
        r += "shock speeds          : " + fmt17(res.sol.link1.sigma) + ", " +
             fmt17(res.sol.link2.sigma) + "\n";
        r += "pressure strengths    : " + fmt17(res.sol.link1.delta) + ", " +
             fmt17(res.sol.link2.delta) + "\n";
        r += "tau_max               : " + fmt17(res.tau.tau_max) + "\n";
        r += "tau admissible        : " + std::string(res.tau.pass ? "yes" : "no") + "\n";
        write_text(out / "report.txt", r);
    }
    return res;
}

ProfileResult cmd_profile(const ExperimentParams& p, const KeyValueConfig& cfg,
                          const std::string& out_dir) {
    ProfileResult res;
    res.sol = solve_midstate(p.gas, p.left, p.right);
    res.tau = check_tau_admissible(p.gas, res.sol);
    if (!res.tau.pass) {
        throw AdmissibilityError("tau = " + fmt17(p.gas.tau) + " exceeds tau_max = " +
                                 fmt17(res.tau.tau_max));
    }
    res.p1 = solve_profile(p.gas, res.sol.link1, p.profile_dxi, p.profile_tail_tol);
    res.p2 = solve_profile(p.gas, res.sol.link2, p.profile_dxi, p.profile_tail_tol);
    res.d1 = check_decay(res.p1);
    res.d2 = check_decay(res.p2);

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        const fs::path out(out_dir);
        write_text(out / "config.echo", cfg.echo());
        const WaveProfile* profiles[2] = {&res.p1, &res.p2};
        for (int i = 0; i < 2; ++i) {
            const WaveProfile& w = *profiles[i];
            CsvWriter csv((out / ("profile" + std::to_string(i + 1) + ".csv")).string(),
                          {"xi", "v", "u", "Pi", "dv_dxi"});
            for (size_t k = 0; k < w.v.size(); ++k) {
                csv.row({w.xi[k], w.v[k], w.u[k], w.Pi[k], profile_rhs(p.gas, w.link, w.v[k])});
            }
        }
        std::string r;
        const DecayReport* reports[2] = {&res.d1, &res.d2};
        for (int i = 0; i < 2; ++i) {
            const DecayReport& d = *reports[i];
            r += "profile " + std::to_string(i + 1) + " tail rates (left, right)    : " +
                 fmt17(d.rate_left) + ", " + fmt17(d.rate_right) + "\n";
            r += "profile " + std::to_string(i + 1) + " stress rates (left, right)  : " +
                 fmt17(d.pi_rate_left) + ", " + fmt17(d.pi_rate_right) + "\n";
            r += "profile " + std::to_string(i + 1) + " fit samples (left, right)   : " +
                 std::to_string(d.n_left) + ", " + std::to_string(d.n_right) +
                 (d.conclusive ? " (conclusive)" : " (inconclusive)") + "\n";
        }
        r += "tau_max: " + fmt17(res.tau.tau_max) + " (tau = " + fmt17(p.gas.tau) + ")\n";
        write_text(out / "report.txt", r);
    }
    return res;
}

StabilityResult cmd_stability(const ExperimentParams& p, const KeyValueConfig& cfg,
                              const std::string& out_dir, const SampleHook& hook) {
    StabilityResult res;
    res.sol = solve_midstate(p.gas, p.left, p.right);
    res.tau = check_tau_admissible(p.gas, res.sol);
    if (!res.tau.pass) {
        throw AdmissibilityError("tau = " + fmt17(p.gas.tau) + " exceeds tau_max = " +
                                 fmt17(res.tau.tau_max));
    }
    const WaveProfile p1 = solve_profile(p.gas, res.sol.link1, p.profile_dxi, p.profile_tail_tol);
    const WaveProfile p2 = solve_profile(p.gas, res.sol.link2, p.profile_dxi, p.profile_tail_tol);
    res.wave = make_composite(p.gas, p1, p2, p.lambda1, p.lambda2);

    FieldState state = init_from_composite(p.gas, res.wave, p.grid, p.pert);
    res.initial_totals = field_totals(state, p.grid);

    SolverConfig scfg;
    scfg.stepper = p.gas.tau > 0.0 ? Stepper::relaxed : Stepper::classical;
    scfg.recon = p.recon;
    scfg.cfl = p.cfl;
    scfg.diffusion_cfl = p.diffusion_cfl;
    scfg.bc = {res.sol.left, res.sol.right};
    scfg.boundary_tol_scale = std::max(res.sol.link1.delta, res.sol.link2.delta);

    ShiftState shifts;
    {
        const ShiftRates r0 = shift_rhs(p.gas, res.wave, state, p.grid, shifts);
        shifts.X1dot = r0.X1dot;
        shifts.X2dot = r0.X2dot;
    }

    const bool emit = !out_dir.empty();
    fs::path out(out_dir);
    std::unique_ptr<CsvWriter> diag;
    if (emit) {
        fs::create_directories(out / "snapshots");
        write_text(out / "config.echo", cfg.echo());
        diag = std::make_unique<CsvWriter>((out / "diagnostics.csv").string(),
                                           diagnostics_columns());
    }

    std::vector<Observer> observers;
    observers.push_back({p.diag_interval, [&](const FieldState& s) {
                             const DiagnosticsRow row =
                                 make_diagnostics_row(p.gas, res.wave, s, p.grid, shifts);
                             res.rows.push_back(row);
                             if (diag) diag->row(diagnostics_values(row));
                             if (hook) hook(s, shifts, row);
                         }});
    if (emit) {
        observers.push_back({p.snapshot_interval, [&](const FieldState& s) {
                                 char label[32];
                                 std::snprintf(label, sizeof(label), "%.6g", s.t);
                                 CsvWriter snap(
                                     (out / "snapshots" / ("snapshot_t" + std::string(label) +
                                                           ".csv"))
                                         .string(),
                                     {"x", "v", "u", "Pi", "v_tilde", "u_tilde", "Pi_tilde", "a"});
                                 for (int j = 0; j < p.grid.n; ++j) {
                                     const double x = p.grid.x(j);
                                     const CompositeState c =
                                         eval_composite(res.wave, s.t, x, shifts.X1, shifts.X2);
                                     const double a =
                                         weight_a(res.wave, s.t, x, shifts.X1, shifts.X2);
                                     snap.row({x, s.v[j], s.u[j], s.Pi[j], c.v, c.u, c.Pi, a});
                                 }
                             }});
    }

    const PreStepHook pre_step = [&](const FieldState& s, double dt) {
        const ShiftRates r = shift_rhs(p.gas, res.wave, s, p.grid, shifts);
        advance_shift(shifts, r, dt);
    };

    res.state = run(p.gas, std::move(state), p.grid, scfg, p.t_end, std::move(observers),
                    pre_step, &res.stats);
    res.shifts = shifts;

    if (emit) write_text(out / "report.txt", run_summary(res, p.grid));
    return res;
}

RelaxationResult cmd_relaxation_limit(const ExperimentParams& p, const KeyValueConfig& cfg,
                                      const std::string& out_dir) {
    const double dx = p.grid.dx();

    // Classical baseline: tau = 0 profiles and the viscous stepper.
    const GasModel g0(p.gas.gamma, p.gas.mu, 0.0);
    const RiemannSolution sol = solve_midstate(g0, p.left, p.right);
    const FarField bc{sol.left, sol.right};
    const double btol_scale = std::max(sol.link1.delta, sol.link2.delta);

    const auto evolve = [&](const GasModel& g, Stepper stepper) {
        const WaveProfile p1 = solve_profile(g, sol.link1, p.profile_dxi, p.profile_tail_tol);
        const WaveProfile p2 = solve_profile(g, sol.link2, p.profile_dxi, p.profile_tail_tol);
        const CompositeWave wave = make_composite(g, p1, p2, p.lambda1, p.lambda2);
        FieldState state = init_from_composite(g, wave, p.grid, p.pert);
        SolverConfig scfg;
        scfg.stepper = stepper;
        scfg.recon = p.recon;
        scfg.cfl = p.cfl;
        scfg.diffusion_cfl = p.diffusion_cfl;
        scfg.bc = bc;
        scfg.boundary_tol_scale = btol_scale;
        return run(g, std::move(state), p.grid, scfg, p.t_end);
    };

    const FieldState base = evolve(g0, Stepper::classical);

    RelaxationResult res;
    for (const double tau : p.tau_list) {
        const GasModel gt(p.gas.gamma, p.gas.mu, tau);
        const TauCheck tc = check_tau_admissible(gt, sol);
        if (!tc.pass) {
            throw AdmissibilityError("tau = " + fmt17(tau) + " exceeds tau_max = " +
                                     fmt17(tc.tau_max));
        }
        const FieldState fin = evolve(gt, Stepper::relaxed);

        RelaxationRow row;
        row.tau = tau;
        double acc_vu = 0.0, acc_pi = 0.0;
        for (int j = 0; j < p.grid.n; ++j) {
            const double dv = fin.v[j] - base.v[j];
            const double du = fin.u[j] - base.u[j];
            acc_vu += dv * dv + du * du;
            const double r = fin.Pi[j] - gt.mu * centered_ux(fin, bc, dx, j) / fin.v[j];
            acc_pi += r * r;
        }
        row.dist_vu = std::sqrt(acc_vu * dx);
        row.pi_consistency = std::sqrt(acc_pi * dx);
        res.rows.push_back(row);
    }

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        const fs::path out(out_dir);
        write_text(out / "config.echo", cfg.echo());
        CsvWriter csv((out / "relaxation.csv").string(), {"tau", "dist_L2_vu", "pi_consistency"});
        std::string r;
        for (const RelaxationRow& row : res.rows) {
            csv.row({row.tau, row.dist_vu, row.pi_consistency});
            r += "tau = " + fmt17(row.tau) + ": |(v,u) - classical|_L2 = " + fmt17(row.dist_vu) +
                 ", |Pi - mu u_x / v|_L2 = " + fmt17(row.pi_consistency) + "\n";
        }
        write_text(out / "report.txt", r);
    }
    return res;
}

}  // namespace rns
