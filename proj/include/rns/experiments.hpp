#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rns/config.hpp"
#include "rns/shiftdiag.hpp"

namespace rns {

// ============================================================================
// Canned experiments behind the CLI subcommands.  Each driver takes resolved
// parameters plus an output directory; an empty directory string suppresses
// all file output (in-memory use by the test drivers).  Emitted CSVs are
// schema-stable with 17-significant-digit floats.
// ============================================================================

struct ExperimentParams {
    GasModel gas;
    EndState left{1.1, 0.2};
    EndState right{1.1, -0.2};
    Grid1D grid{-400.0, 400.0, 8000};
    double t_end = 200.0;
    double cfl = 0.45;
    double diffusion_cfl = 0.4;
    Reconstruction recon = Reconstruction::minmod_muscl;
    double diag_interval = 0.5;
    double snapshot_interval = 50.0;
    Perturbation pert;
    double lambda1 = 0.0;  // 0 selects sqrt(delta_1)
    double lambda2 = 0.0;
    double profile_dxi = 0.0;  // 0 selects the profile default
    double profile_tail_tol = 1e-10;
    std::vector<double> tau_list{1e-2, 1e-3, 1e-4};

    // Resolves and validates every recognized key; rejects unknown keys.
    static ExperimentParams from_config(const KeyValueConfig& cfg);
};

struct RiemannResult {
    RiemannSolution sol;
    TauCheck tau;
};
// Writes riemann.csv (v_m, u_m, sigma1, sigma2, delta1, delta2, tau_max),
// config.echo, report.txt.
RiemannResult cmd_riemann(const ExperimentParams& p, const KeyValueConfig& cfg,
                          const std::string& out_dir);

struct ProfileResult {
    RiemannSolution sol;
    TauCheck tau;
    WaveProfile p1, p2;
    DecayReport d1, d2;
};
// Writes profile1.csv / profile2.csv (xi, v, u, Pi, dv_dxi), config.echo,
// report.txt with the decay summary.
ProfileResult cmd_profile(const ExperimentParams& p, const KeyValueConfig& cfg,
                          const std::string& out_dir);

struct StabilityResult {
    RiemannSolution sol;
    TauCheck tau;
    CompositeWave wave;
    std::vector<DiagnosticsRow> rows;
    RunStats stats;
    ShiftState shifts;       // final
    FieldState state;        // final
    Totals initial_totals;
};
// Per-diagnostic-sample callback for callers that need the live state.
using SampleHook = std::function<void(const FieldState&, const ShiftState&, const DiagnosticsRow&)>;
// Full coupled run.  Writes config.echo, diagnostics.csv,
// snapshots/snapshot_t<time>.csv (x, v, u, Pi, v_tilde, u_tilde, Pi_tilde, a),
// report.txt.  Requires the configured tau to pass its admissibility bound.
StabilityResult cmd_stability(const ExperimentParams& p, const KeyValueConfig& cfg,
                              const std::string& out_dir, const SampleHook& hook = {});

struct RelaxationRow {
    double tau = 0.0;
    double dist_vu = 0.0;         // L2 of (v, u) against the classical run at t_end
    double pi_consistency = 0.0;  // L2 of Pi - mu D0(u)/v at t_end
};
struct RelaxationResult {
    std::vector<RelaxationRow> rows;  // tau_list order
};
// Runs the classical baseline once and one relaxed case per tau in
// p.tau_list.  Writes config.echo, relaxation.csv (tau, dist_L2_vu,
// pi_consistency), report.txt.
RelaxationResult cmd_relaxation_limit(const ExperimentParams& p, const KeyValueConfig& cfg,
                                      const std::string& out_dir);

}  // namespace rns
