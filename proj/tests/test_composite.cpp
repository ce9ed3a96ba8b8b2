#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "rns/composite.hpp"
#include "rns/profile.hpp"
#include "rns/riemann.hpp"

using namespace rns;

namespace {

const GasModel kGas{1.4, 1.0, 0.01};

struct Fixture {
    RiemannSolution sol;
    WaveProfile p1;
    WaveProfile p2;
    CompositeWave w;
    Fixture()
        : sol(solve_midstate(kGas, EndState{1.1, 0.2}, EndState{1.1, -0.2})),
          p1(solve_profile(kGas, sol.link1)),
          p2(solve_profile(kGas, sol.link2)),
          w(make_composite(kGas, p1, p2)) {}
};

const Fixture& fixture() {
    static Fixture f;
    return f;
}

}  // namespace

TEST_CASE("assembly rejects swapped families, detached layers, and bad weights") {
    const Fixture& f = fixture();
    CHECK_THROWS_AS(make_composite(kGas, f.p2, f.p1), std::invalid_argument);

    // A second-family layer not rooted at the shared middle state.
    const EndState right = f.sol.right;
    const double v_off = f.sol.mid.v + 1e-7;
    const EndState left{v_off, right.u + hugoniot_velocity_drop(kGas, 2, v_off, right.v)};
    const WaveProfile detached = solve_profile(kGas, make_shock_link(kGas, 2, left, right));
    CHECK_THROWS_AS(make_composite(kGas, f.p1, detached), std::invalid_argument);

    CHECK_THROWS_AS(make_composite(kGas, f.p1, f.p2, 1.0, 0.5), ConfigError);
    CHECK_THROWS_AS(make_composite(kGas, f.p1, f.p2, 0.5, 1.5), ConfigError);
    // Below the strength floor lambda >= delta.
    CHECK_THROWS_AS(make_composite(kGas, f.p1, f.p2, 0.5 * f.sol.link1.delta, 0.5), ConfigError);
}

TEST_CASE("default coupling weights are square roots of the strengths") {
    const Fixture& f = fixture();
    CHECK(f.w.lambda1 == std::sqrt(f.sol.link1.delta));
    CHECK(f.w.lambda2 == std::sqrt(f.sol.link2.delta));
    const CompositeWave custom = make_composite(kGas, f.p1, f.p2, 0.3, 0.25);
    CHECK(custom.lambda1 == 0.3);
    CHECK(custom.lambda2 == 0.25);
}

TEST_CASE("superposition matches the by-hand formula and stays in its band") {
    const Fixture& f = fixture();
    const double vm = f.w.mid.v;
    const double v_hi = f.sol.left.v + f.sol.right.v - vm;
    for (double t : {0.0, 5.0, 60.0}) {
        for (double x = -150.0; x <= 150.0; x += 1.7) {
            const double xi1 = x - f.sol.link1.sigma * t - 0.13;
            const double xi2 = x - f.sol.link2.sigma * t + 0.07;
            const ProfileSample s1 = eval(f.p1, xi1);
            const ProfileSample s2 = eval(f.p2, xi2);
            const CompositeState c = eval_composite(f.w, t, x, 0.13, -0.07);
            CHECK(c.v == doctest::Approx(s1.v + s2.v - vm).epsilon(1e-15));
            CHECK(c.u == doctest::Approx(s1.u + s2.u - f.w.mid.u).epsilon(1e-15));
            CHECK(c.Pi == doctest::Approx(s1.Pi + s2.Pi).epsilon(1e-15));
            CHECK(c.v >= vm);
            CHECK(c.v <= v_hi);
        }
    }
}

TEST_CASE("weight spans its band with exact values on the tails") {
    const Fixture& f = fixture();
    // Far tails: the full single-layer increment, bitwise.
    CHECK(weight_a(f.w, 0.0, -500.0, 0.0, 0.0) == 1.0 + f.w.lambda1);
    CHECK(weight_a(f.w, 0.0, 500.0, 0.0, 0.0) == 1.0 + f.w.lambda2);
    // Once the layers have separated, the region between them is unweighted.
    CHECK(weight_a(f.w, 100.0, 0.0, 0.0, 0.0) == 1.0);

    const double hi = 1.0 + f.w.lambda1 + f.w.lambda2;
    double prev_layer1 = 0.0;
    for (double x = -150.0; x <= 150.0; x += 0.25) {
        const double a = weight_a(f.w, 50.0, x, 0.0, 0.0);
        CHECK(a >= 1.0);
        CHECK(a <= hi);
        (void)prev_layer1;
    }
    // Across each layer the weight grows in that family's travel direction.
    const double t = 50.0;
    const double c1 = f.sol.link1.sigma * t, c2 = f.sol.link2.sigma * t;
    for (double d = -20.0; d < 20.0; d += 0.5) {
        CHECK(weight_a(f.w, t, c1 + d, 0.0, 0.0) >= weight_a(f.w, t, c1 + d + 0.5, 0.0, 0.0));
        CHECK(weight_a(f.w, t, c2 + d, 0.0, 0.0) <= weight_a(f.w, t, c2 + d + 0.5, 0.0, 0.0));
    }
}

TEST_CASE("interaction sources vanish identically once the layers separate") {
    const Fixture& f = fixture();
    for (double x = -300.0; x <= 300.0; x += 2.3) {
        // The momentum source only feels the last rounding of the superposed
        // volume here, many orders below any physical scale.
        CHECK(std::abs(source_F1(f.w, 100.0, x, 0.0, 0.0)) <= 1e-16);
        CHECK(source_F2(f.w, 100.0, x, 0.0, 0.0) == 0.0);
    }
    // While the layers overlap the sources are genuinely present...
    auto sup_sources = [&](double t) {
        double m1 = 0.0, m2 = 0.0;
        for (double x = -300.0; x <= 300.0; x += 0.2) {
            m1 = std::max(m1, std::abs(source_F1(f.w, t, x, 0.0, 0.0)));
            m2 = std::max(m2, std::abs(source_F2(f.w, t, x, 0.0, 0.0)));
        }
        return std::pair{m1, m2};
    };
    const auto [f1_0, f2_0] = sup_sources(0.0);
    CHECK(f1_0 > 1e-4);
    CHECK(f2_0 > 1e-4);
    // ... and fade as the layers drift apart.
    const auto [f1_20, f2_20] = sup_sources(20.0);
    const auto [f1_40, f2_40] = sup_sources(40.0);
    CHECK(f1_20 < f1_0);
    CHECK(f2_20 < f2_0);
    CHECK(f1_40 < 0.05 * f1_20);
    CHECK(f2_40 < 0.05 * f2_20);
}

TEST_CASE("stress source matches its closed form") {
    const Fixture& f = fixture();
    const double vm = f.w.mid.v;
    for (double x : {-15.0, -3.0, 0.0, 4.0, 12.0}) {
        const double t = 2.0;
        const ProfileSample s1 = eval(f.p1, x - f.sol.link1.sigma * t);
        const ProfileSample s2 = eval(f.p2, x - f.sol.link2.sigma * t);
        const double expect = (s2.v - vm) * s1.Pi + (s1.v - vm) * s2.Pi;
        CHECK(source_F2(f.w, t, x, 0.0, 0.0) == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("superposition solves the system up to the interaction sources") {
    // Finely sampled layers keep interpolation noise far below the sources.
    const Fixture& f = fixture();
    const double dxi = 0.002 / f.sol.link1.delta;
    const WaveProfile q1 = solve_profile(kGas, f.sol.link1, dxi);
    const WaveProfile q2 = solve_profile(kGas, f.sol.link2, dxi);
    const CompositeWave w = make_composite(kGas, q1, q2);

    const double t = 1.0, h = 0.05, dt = 0.005;
    double worst_mom = 0.0, worst_str = 0.0, scale_mom = 0.0, scale_str = 0.0;
    for (double x = -60.0; x <= 60.0; x += 0.5) {
        auto S = [&](double tt, double xx) { return eval_composite(w, tt, xx, 0.0, 0.0); };
        const CompositeState c0 = S(t, x);
        const CompositeState cxp = S(t, x + h), cxm = S(t, x - h);
        const CompositeState ctp = S(t + dt, x), ctm = S(t - dt, x);

        const double ut = (ctp.u - ctm.u) / (2 * dt);
        const double px = (pressure(kGas, cxp.v) - pressure(kGas, cxm.v)) / (2 * h);
        const double Pix = (cxp.Pi - cxm.Pi) / (2 * h);
        const double F1 = source_F1(w, t, x, 0.0, 0.0);
        worst_mom = std::max(worst_mom, std::abs(ut + px - Pix - F1));
        scale_mom = std::max(scale_mom, std::abs(F1));

        const double Pit = (ctp.Pi - ctm.Pi) / (2 * dt);
        const double ux = (cxp.u - cxm.u) / (2 * h);
        const double F2 = source_F2(w, t, x, 0.0, 0.0);
        worst_str = std::max(worst_str, std::abs(kGas.tau * Pit + c0.v * c0.Pi - kGas.mu * ux - F2));
        scale_str = std::max(scale_str, std::abs(F2));
    }
    // The sources are three orders above the discretization floor here.
    CHECK(scale_mom > 1e-3);
    CHECK(scale_str > 1e-3);
    CHECK(worst_mom <= 3e-6);
    CHECK(worst_str <= 2e-6);
}
