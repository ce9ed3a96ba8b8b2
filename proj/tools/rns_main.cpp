#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rns/csv.hpp"
#include "rns/errors.hpp"
#include "rns/experiments.hpp"

namespace {

void print_csv_line(const std::vector<std::string>& cols) {
    for (size_t i = 0; i < cols.size(); ++i) std::cout << (i ? "," : "") << cols[i];
    std::cout << '\n';
}

void print_csv_line(const std::vector<double>& vals) {
    for (size_t i = 0; i < vals.size(); ++i) std::cout << (i ? "," : "") << rns::fmt17(vals[i]);
    std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Composite double-shock laboratory for 1D relaxed compressible gas dynamics"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "flat key=value configuration file");
        sub->add_option("--out", out_dir, "output directory (omit for stdout-only)");
        sub->add_option("--set", overrides, "override key=value (repeatable)")
            ->take_all()
            ->allow_extra_args(false);
    };

    CLI::App* sub_riemann =
        app.add_subcommand("riemann", "solve the double-shock middle state and print one CSV row");
    CLI::App* sub_profile =
        app.add_subcommand("profile", "integrate both shock profiles and report tail decay");
    CLI::App* sub_stability =
        app.add_subcommand("stability", "run the perturbed composite wave with shift tracking");
    CLI::App* sub_relax = app.add_subcommand(
        "relaxation-limit", "sweep tau against the classical baseline at fixed geometry");
    for (CLI::App* sub : {sub_riemann, sub_profile, sub_stability, sub_relax}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage problems map to the config error code
    }

    try {
        rns::KeyValueConfig cfg;
        if (!config_path.empty()) cfg = rns::KeyValueConfig::from_file(config_path);
        for (const std::string& s : overrides) cfg.apply_override(s);
        const rns::ExperimentParams params = rns::ExperimentParams::from_config(cfg);

        if (sub_riemann->parsed()) {
            const rns::RiemannResult r = rns::cmd_riemann(params, cfg, out_dir);
            print_csv_line(std::vector<std::string>{"v_m", "u_m", "sigma1", "sigma2", "delta1",
                                                    "delta2", "tau_max"});
            print_csv_line({r.sol.mid.v, r.sol.mid.u, r.sol.link1.sigma, r.sol.link2.sigma,
                            r.sol.link1.delta, r.sol.link2.delta, r.tau.tau_max});
        } else if (sub_profile->parsed()) {
            const rns::ProfileResult r = rns::cmd_profile(params, cfg, out_dir);
            std::cout << "profile 1: " << r.p1.v.size() << " samples on [" << rns::fmt17(r.p1.xi0)
                      << ", " << rns::fmt17(r.p1.xi_last()) << "], tail rates "
                      << rns::fmt17(r.d1.rate_left) << " / " << rns::fmt17(r.d1.rate_right)
                      << '\n';
            std::cout << "profile 2: " << r.p2.v.size() << " samples on [" << rns::fmt17(r.p2.xi0)
                      << ", " << rns::fmt17(r.p2.xi_last()) << "], tail rates "
                      << rns::fmt17(r.d2.rate_left) << " / " << rns::fmt17(r.d2.rate_right)
                      << '\n';
            std::cout << "tau_max " << rns::fmt17(r.tau.tau_max) << " (tau "
                      << rns::fmt17(params.gas.tau) << ")\n";
        } else if (sub_stability->parsed()) {
            const rns::StabilityResult r = rns::cmd_stability(params, cfg, out_dir);
            const rns::DiagnosticsRow& last = r.rows.back();
            std::cout << "t = " << rns::fmt17(last.t) << ", steps = " << r.stats.steps << '\n';
            std::cout << "shifts X1 = " << rns::fmt17(last.X1) << ", X2 = " << rns::fmt17(last.X2)
                      << '\n';
            std::cout << "E_weighted = " << rns::fmt17(last.E_weighted)
                      << ", err_L2 = " << rns::fmt17(last.err_L2) << '\n';
        } else if (sub_relax->parsed()) {
            const rns::RelaxationResult r = rns::cmd_relaxation_limit(params, cfg, out_dir);
            print_csv_line(std::vector<std::string>{"tau", "dist_L2_vu", "pi_consistency"});
            for (const rns::RelaxationRow& row : r.rows) {
                print_csv_line({row.tau, row.dist_vu, row.pi_consistency});
            }
        }
        return 0;
    } catch (const rns::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.exit_code();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
