#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "rns/composite.hpp"
#include "rns/profile.hpp"
#include "rns/riemann.hpp"
#include "rns/solver.hpp"

using namespace rns;

namespace {

FieldState constant_state(const Grid1D& grid, double v, double u, double Pi) {
    FieldState s;
    s.t = 0.0;
    s.v.assign(grid.n, v);
    s.u.assign(grid.n, u);
    s.Pi.assign(grid.n, Pi);
    return s;
}

FieldState bump_state(const Grid1D& grid) {
    FieldState s = constant_state(grid, 1.0, 0.0, 0.0);
    for (int j = 0; j < grid.n; ++j)
        s.v[j] = 1.0 + 0.05 * std::exp(-grid.x(j) * grid.x(j) / 4.0);
    return s;
}

std::vector<double> restrict_half(const std::vector<double>& fine) {
    std::vector<double> out(fine.size() / 2);
    for (size_t j = 0; j < out.size(); ++j) out[j] = 0.5 * (fine[2 * j] + fine[2 * j + 1]);
    return out;
}

double l2_diff(const std::vector<double>& a, const std::vector<double>& b, double dx) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]) * dx;
    return std::sqrt(s);
}

CompositeWave reference_composite(const GasModel& g) {
    const RiemannSolution sol = solve_midstate(g, EndState{1.1, 0.2}, EndState{1.1, -0.2});
    return make_composite(g, solve_profile(g, sol.link1), solve_profile(g, sol.link2));
}

}  // namespace

TEST_CASE("a uniform state is a bitwise fixed point of both steppers") {
    const Grid1D grid{-10.0, 10.0, 64};
    SolverConfig cfg;
    cfg.bc = FarField{{1.3, 0.7}, {1.3, 0.7}};

    const GasModel gr{1.4, 1.0, 0.01};
    cfg.stepper = Stepper::relaxed;
    FieldState s = constant_state(grid, 1.3, 0.7, 0.0);
    for (int k = 0; k < 100; ++k) step_relaxed(gr, s, grid, cfg);
    for (int j = 0; j < grid.n; ++j) {
        CHECK(s.v[j] == 1.3);
        CHECK(s.u[j] == 0.7);
        CHECK(s.Pi[j] == 0.0);
    }

    const GasModel gc{1.4, 1.0, 0.0};
    cfg.stepper = Stepper::classical;
    s = constant_state(grid, 1.3, 0.7, 0.0);
    for (int k = 0; k < 100; ++k) step_classical(gc, s, grid, cfg);
    for (int j = 0; j < grid.n; ++j) {
        CHECK(s.v[j] == 1.3);
        CHECK(s.u[j] == 0.7);
    }
}

TEST_CASE("stress off equilibrium decays by the exact exponential factor") {
    const GasModel g{1.4, 1.0, 0.01};
    const Grid1D grid{-10.0, 10.0, 64};
    SolverConfig cfg;
    cfg.bc = FarField{{1.0, 0.0}, {1.0, 0.0}};
    FieldState s = constant_state(grid, 1.0, 0.0, 0.25);
    const double dt = 1e-3;
    step_relaxed(g, s, grid, cfg, dt);
    const double expect = 0.25 * std::exp(-1.0 * dt / g.tau);
    // The zero-stress ghosts disturb a few cells beside each boundary; the
    // interior sees the pure relaxation arithmetic.
    for (int j = 10; j < grid.n - 10; ++j) {
        CHECK(s.Pi[j] == doctest::Approx(expect).epsilon(1e-14));
        CHECK(s.v[j] == 1.0);
    }
}

TEST_CASE("identical runs give bitwise identical fields") {
    const GasModel g{1.4, 1.0, 0.01};
    const Grid1D grid{-150.0, 150.0, 300};
    const CompositeWave w = reference_composite(g);
    Perturbation pert;
    pert.kind = Perturbation::Kind::gauss;
    pert.amplitude = 0.01;
    pert.width = 5.0;
    SolverConfig cfg;
    cfg.bc = FarField{{1.1, 0.2}, {1.1, -0.2}};
    cfg.boundary_tol_scale = 0.25;
    const FieldState a = run(g, init_from_composite(g, w, grid, pert), grid, cfg, 0.5);
    const FieldState b = run(g, init_from_composite(g, w, grid, pert), grid, cfg, 0.5);
    REQUIRE(a.v.size() == b.v.size());
    for (size_t j = 0; j < a.v.size(); ++j) {
        CHECK(a.v[j] == b.v[j]);
        CHECK(a.u[j] == b.u[j]);
        CHECK(a.Pi[j] == b.Pi[j]);
    }
}

TEST_CASE("boundary fluxes telescope the conserved totals to roundoff") {
    const GasModel g{1.4, 1.0, 0.01};
    const Grid1D grid{-30.0, 30.0, 400};
    SolverConfig cfg;
    cfg.bc = FarField{{1.0, 0.0}, {1.0, 0.0}};
    FieldState s = bump_state(grid);
    double tv0 = 0.0, tu0 = 0.0;
    for (int j = 0; j < grid.n; ++j) {
        tv0 += s.v[j];
        tu0 += s.u[j];
    }
    tv0 *= grid.dx();
    tu0 *= grid.dx();
    RunStats stats;
    FieldState out = run(g, s, grid, cfg, 1.0, {}, nullptr, &stats);
    double tv = 0.0, tu = 0.0;
    for (int j = 0; j < grid.n; ++j) {
        tv += out.v[j];
        tu += out.u[j];
    }
    tv *= grid.dx();
    tu *= grid.dx();
    CHECK(conservation_drift(tv0, tv, stats.flux.v_left, stats.flux.v_right) <= 1e-13);
    CHECK(conservation_drift(tu0, tu, stats.flux.u_left, stats.flux.u_right) <= 1e-13);
    CHECK(stats.steps > 10);
}

TEST_CASE("one step on a uniform state accumulates the exact boundary fluxes") {
    const GasModel g{1.4, 1.0, 0.01};
    const Grid1D grid{-10.0, 10.0, 64};
    SolverConfig cfg;
    cfg.bc = FarField{{1.3, 0.7}, {1.3, 0.7}};
    FieldState s = constant_state(grid, 1.3, 0.7, 0.0);
    StepFluxes fl;
    const double dt = 1e-3;
    step_relaxed(g, s, grid, cfg, dt, &fl);
    // Uniform data: the convective flux is (-u, p(v)) at both faces, and both
    // half-weighted stages must sum to a full dt.
    CHECK(fl.v_left == doctest::Approx(-0.7 * dt).epsilon(1e-15));
    CHECK(fl.v_right == doctest::Approx(-0.7 * dt).epsilon(1e-15));
    const double p = pressure(g, 1.3);
    CHECK(fl.u_left == doctest::Approx(p * dt).epsilon(1e-15));
    CHECK(fl.u_right == doctest::Approx(p * dt).epsilon(1e-15));
}

TEST_CASE("observers fire at the initial time and at every interval crossing") {
    const GasModel g{1.4, 1.0, 0.01};
    const Grid1D grid{-20.0, 20.0, 100};
    SolverConfig cfg;
    cfg.bc = FarField{{1.0, 0.0}, {1.0, 0.0}};
    std::vector<double> fast, slow;
    std::vector<Observer> obs;
    obs.push_back({0.1, [&](const FieldState& st) { fast.push_back(st.t); }});
    obs.push_back({0.2, [&](const FieldState& st) { slow.push_back(st.t); }});
    run(g, bump_state(grid), grid, cfg, 1.0, obs);
    REQUIRE(fast.size() == 11);
    REQUIRE(slow.size() == 6);
    for (size_t i = 0; i < slow.size(); ++i) CHECK(slow[i] == fast[2 * i]);
    CHECK(fast.front() == 0.0);
    CHECK(fast.back() == 1.0);
    for (size_t i = 0; i + 1 < fast.size(); ++i) CHECK(fast[i] < fast[i + 1]);
}

TEST_CASE("running to the current time is a no-op that still reports once") {
    const GasModel g{1.4, 1.0, 0.01};
    const Grid1D grid{-20.0, 20.0, 100};
    SolverConfig cfg;
    cfg.bc = FarField{{1.0, 0.0}, {1.0, 0.0}};
    FieldState s = bump_state(grid);
    int fired = 0;
    RunStats stats;
    FieldState out = run(g, s, grid, cfg, 0.0,
                         {{0.5, [&](const FieldState&) { ++fired; }}}, nullptr, &stats);
    CHECK(fired == 1);
    CHECK(stats.steps == 0);
    for (int j = 0; j < grid.n; ++j) CHECK(out.v[j] == s.v[j]);
    CHECK_THROWS_AS(run(g, std::move(s), grid, cfg, -1.0), ConfigError);
}

TEST_CASE("grid refinement converges at better than first order for both steppers") {
    SolverConfig cfg;
    cfg.bc = FarField{{1.0, 0.0}, {1.0, 0.0}};
    for (int which = 0; which < 2; ++which) {
        const GasModel g{1.4, 1.0, which == 0 ? 0.01 : 0.0};
        cfg.stepper = which == 0 ? Stepper::relaxed : Stepper::classical;
        std::vector<std::vector<double>> sols;
        for (int n : {200, 400, 800}) {
            const Grid1D grid{-20.0, 20.0, n};
            sols.push_back(run(g, bump_state(grid), grid, cfg, 1.0).v);
        }
        const double e1 = l2_diff(sols[0], restrict_half(sols[1]), 40.0 / 200);
        const double e2 = l2_diff(sols[1], restrict_half(sols[2]), 40.0 / 400);
        CHECK(e1 > 0.0);
        CHECK(std::log2(e1 / e2) >= 1.5);
    }
}

TEST_CASE("shrinking the relaxation time approaches the instantaneous-stress run") {
    const Grid1D grid{-20.0, 20.0, 400};
    SolverConfig cfg;
    cfg.bc = FarField{{1.0, 0.0}, {1.0, 0.0}};
    const GasModel g0{1.4, 1.0, 0.0};
    cfg.stepper = Stepper::classical;
    const FieldState ref = run(g0, bump_state(grid), grid, cfg, 0.5);
    std::vector<double> dist;
    for (double tau : {1e-2, 1e-3, 1e-4}) {
        const GasModel g{1.4, 1.0, tau};
        cfg.stepper = Stepper::relaxed;
        const FieldState s = run(g, bump_state(grid), grid, cfg, 0.5);
        double acc = l2_diff(s.v, ref.v, grid.dx());
        acc = std::hypot(acc, l2_diff(s.u, ref.u, grid.dx()));
        dist.push_back(acc);
    }
    CHECK(dist[0] > dist[1]);
    CHECK(dist[1] > dist[2]);
    CHECK(dist[2] < 0.2 * dist[0]);
}

TEST_CASE("the gaussian perturbation has the documented shape and targets") {
    Perturbation p;
    p.kind = Perturbation::Kind::gauss;
    p.target = Perturbation::Target::v;
    p.amplitude = 0.01;
    p.center = 2.0;
    p.width = 3.0;
    CHECK(p(2.0) == 0.01);
    CHECK(p(5.0) == doctest::Approx(0.01 * std::exp(-1.0)).epsilon(1e-15));
    Perturbation none;
    CHECK(none(0.0) == 0.0);

    // Discrete L2 mass matches the closed form A sqrt(w) (pi/2)^(1/4).
    p.center = 0.0;
    p.width = 5.0;
    const Grid1D grid{-400.0, 400.0, 8000};
    double acc = 0.0;
    for (int j = 0; j < grid.n; ++j) acc += p(grid.x(j)) * p(grid.x(j)) * grid.dx();
    CHECK(std::sqrt(acc) ==
          doctest::Approx(0.01 * std::sqrt(5.0) * 1.1195151349202477).epsilon(1e-10));

    // Target selection moves only the requested fields.
    const GasModel g{1.4, 1.0, 0.01};
    const CompositeWave w = reference_composite(g);
    const Grid1D small{-150.0, 150.0, 600};
    const FieldState base = init_from_composite(g, w, small, Perturbation{});
    Perturbation pv;
    pv.kind = Perturbation::Kind::gauss;
    pv.amplitude = 0.01;
    pv.width = 5.0;
    FieldState sv = init_from_composite(g, w, small, pv);
    for (int j = 0; j < small.n; ++j) {
        CHECK(sv.v[j] == base.v[j] + pv(small.x(j)));
        CHECK(sv.u[j] == base.u[j]);
        CHECK(sv.Pi[j] == base.Pi[j]);
    }
    pv.target = Perturbation::Target::both;
    sv = init_from_composite(g, w, small, pv);
    for (int j = 0; j < small.n; j += 17) {
        CHECK(sv.v[j] == base.v[j] + pv(small.x(j)));
        CHECK(sv.u[j] == base.u[j] + pv(small.x(j)));
    }
}

TEST_CASE("initialization and stepping surface the documented failures") {
    const GasModel g{1.4, 1.0, 0.01};
    const CompositeWave w = reference_composite(g);

    // Domain too narrow for the layers to reach their far fields.
    CHECK_THROWS_AS(init_from_composite(g, w, Grid1D{-50.0, 50.0, 200}, Perturbation{}),
                    DomainTooSmallError);

    // Perturbation deep enough to open vacuum.
    Perturbation deep;
    deep.kind = Perturbation::Kind::gauss;
    deep.amplitude = -2.0;
    deep.width = 5.0;
    CHECK_THROWS_AS(init_from_composite(g, w, Grid1D{-400.0, 400.0, 800}, deep), VacuumError);

    // Relaxed stepper without a relaxation time.
    const GasModel g0{1.4, 1.0, 0.0};
    const Grid1D grid{-20.0, 20.0, 100};
    SolverConfig cfg;
    cfg.bc = FarField{{1.0, 0.0}, {1.0, 0.0}};
    cfg.stepper = Stepper::relaxed;
    FieldState s = bump_state(grid);
    CHECK_THROWS_AS(stable_dt(g0, s, grid, cfg), ConfigError);

    // Absurd step size blows up in finitely many steps.
    CHECK_THROWS_AS(
        [&] {
            FieldState b = bump_state(grid);
            for (int k = 0; k < 50; ++k) step_relaxed(g, b, grid, cfg, 10.0);
        }(),
        SolverBlowupError);

    // A disturbance parked on the boundary aborts the run.
    Perturbation edge;
    edge.kind = Perturbation::Kind::gauss;
    edge.amplitude = 0.01;
    edge.center = -398.0;
    edge.width = 2.0;
    const Grid1D big{-400.0, 400.0, 1000};
    SolverConfig ref_cfg;
    ref_cfg.bc = FarField{{1.1, 0.2}, {1.1, -0.2}};
    ref_cfg.boundary_tol_scale = 0.25;
    CHECK_THROWS_AS(run(g, init_from_composite(g, w, big, edge), big, ref_cfg, 5.0),
                    DomainTooSmallError);
}
