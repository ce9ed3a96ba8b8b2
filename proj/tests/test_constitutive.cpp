#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rns/constitutive.hpp"

using namespace rns;

namespace {
const GasModel g14(1.4, 1.0, 0.0);
}

TEST_CASE("pressure matches high-precision reference values") {
    CHECK(pressure(g14, 1.0) == 1.0);
    CHECK(pressure(g14, 2.0) == doctest::Approx(0.3789291416275995).epsilon(1e-14));
    CHECK(pressure(g14, 1.2) == doctest::Approx(0.7747226539790469).epsilon(1e-14));
    const GasModel g53(5.0 / 3.0, 1.0, 0.0);
    CHECK(pressure(g53, 2.0) == doctest::Approx(0.3149802624737183).epsilon(1e-14));
}

TEST_CASE("pressure derivatives at v = 1 and sign structure") {
    CHECK(dpressure(g14, 1.0) == doctest::Approx(-1.4).epsilon(1e-15));
    CHECK(d2pressure(g14, 1.0) == doctest::Approx(3.36).epsilon(1e-15));
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> vol(0.05, 5.0);
    for (int i = 0; i < 1000; ++i) {
        const double v = vol(rng);
        CHECK(dpressure(g14, v) < 0.0);
        CHECK(d2pressure(g14, v) > 0.0);
    }
}

TEST_CASE("pressure_pair agrees with the scalar entry points") {
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> vol(0.05, 5.0);
    for (int i = 0; i < 1000; ++i) {
        const double v = vol(rng);
        const PressurePair pp = pressure_pair(g14, v);
        CHECK(pp.p == doctest::Approx(pressure(g14, v)).epsilon(1e-14));
        CHECK(pp.dp == doctest::Approx(dpressure(g14, v)).epsilon(1e-13));
    }
}

TEST_CASE("potential matches reference values and decreases") {
    CHECK(potential_H(g14, 1.0) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(potential_H(g14, 2.0) == doctest::Approx(1.8946457081379977).epsilon(1e-14));
    CHECK(potential_H(g14, 3.0) < potential_H(g14, 2.0));
}

TEST_CASE("relative quantities: zero at equal arguments, reference value") {
    CHECK(relative_H(g14, 0.9, 0.9) == 0.0);
    CHECK(relative_p(g14, 0.9, 0.9) == 0.0);
    CHECK(relative_H(g14, 1.1, 1.0) == doctest::Approx(0.006483756640419409).epsilon(1e-13));
}

TEST_CASE("relative_H quadratic limit near the base point") {
    // (H(w+e|w) + H(w-e|w)) / (2 e^2) -> H''(w)/2 = -p'(w)/2 with an O(e^2)
    // remainder; the one-sided ratio carries an O(e) cubic term.
    const double w = 1.0, e = 1e-4;
    const double target = -dpressure(g14, w) / 2.0;
    const double sym =
        (relative_H(g14, w + e, w) + relative_H(g14, w - e, w)) / (2.0 * e * e);
    CHECK(std::abs(sym - target) <= 1e-6);
    const double one_sided = relative_H(g14, w + e, w) / (e * e);
    CHECK(std::abs(one_sided - target) <= 1e-4);
}

TEST_CASE("nonpositive volume raises a domain error everywhere") {
    CHECK_THROWS_AS(pressure(g14, 0.0), std::domain_error);
    CHECK_THROWS_AS(pressure(g14, -1.0), std::domain_error);
    CHECK_THROWS_AS(dpressure(g14, 0.0), std::domain_error);
    CHECK_THROWS_AS(d2pressure(g14, -0.5), std::domain_error);
    CHECK_THROWS_AS(potential_H(g14, 0.0), std::domain_error);
    CHECK_THROWS_AS(relative_H(g14, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(relative_p(g14, 0.0, 1.0), std::domain_error);
}

TEST_CASE("model parameter validation") {
    CHECK_THROWS_AS(GasModel(1.0, 1.0, 0.0), ConfigError);
    CHECK_THROWS_AS(GasModel(1.4, 0.0, 0.0), ConfigError);
    CHECK_THROWS_AS(GasModel(1.4, 1.0, -1e-9), ConfigError);
    CHECK_NOTHROW(GasModel(1.4, 1.0, 0.0));
}

TEST_CASE("relative quantities are positive for distinct arguments") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> vol(0.3, 3.0);
    for (int i = 0; i < 5000; ++i) {
        const double v = vol(rng);
        const double w = vol(rng);
        if (v == w) continue;
        CHECK(relative_H(g14, v, w) > 0.0);
        CHECK(relative_p(g14, v, w) > 0.0);
    }
}

TEST_CASE("|v-w|^2 / relative_H stays bounded on the working box") {
    std::mt19937 rng(14);
    std::uniform_real_distribution<double> wv(0.01, 2.0);
    std::uniform_real_distribution<double> vv(0.01, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double w = wv(rng);
        const double v = vv(rng);
        if (v == w) continue;
        const double d = v - w;
        const double ratio = d * d / relative_H(g14, v, w);
        CHECK(std::isfinite(ratio));
        worst = std::max(worst, ratio);
    }
    CHECK(worst < 1e3);
}

TEST_CASE("cubic-corrected quadratic lower bound on relative_H near p = 1") {
    // For |p(v)-p(w)| < 0.05 and |p(w)-1| < 0.05:
    //   H(v|w) >= p(w)^(-1/g-1)/(2g) q^2 - (1+g)/(3g^2) p(w)^(-1/g-2) q^3,
    // q = p(v) - p(w).  Slack 1e-13 covers double roundoff in the
    // difference of O(1) terms; the analytic margin is nonnegative.
    std::mt19937 rng(15);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const double gam = g14.gamma;
    for (int i = 0; i < 10000; ++i) {
        const double pw = 1.0 + 0.05 * unit(rng);
        const double pv = pw + 0.05 * unit(rng);
        const double w = std::pow(pw, -1.0 / gam);
        const double v = std::pow(pv, -1.0 / gam);
        const double q = pressure(g14, v) - pressure(g14, w);
        const double bound = std::pow(pw, -1.0 / gam - 1.0) / (2.0 * gam) * q * q -
                             (1.0 + gam) / (3.0 * gam * gam) *
                                 std::pow(pw, -1.0 / gam - 2.0) * q * q * q;
        CHECK(relative_H(g14, v, w) - bound >= -1e-13);
    }
}

TEST_CASE("derivatives agree with centered differences at second order") {
    const double v = 1.3;
    const auto dp_err = [&](double h) {
        return std::abs(dpressure(g14, v) -
                        (pressure(g14, v + h) - pressure(g14, v - h)) / (2.0 * h));
    };
    const auto d2p_err = [&](double h) {
        return std::abs(d2pressure(g14, v) - (pressure(g14, v + h) - 2.0 * pressure(g14, v) +
                                              pressure(g14, v - h)) /
                                                 (h * h));
    };
    const double order_dp = std::log10(dp_err(1e-2) / dp_err(1e-3));
    const double order_d2p = std::log10(d2p_err(1e-2) / d2p_err(1e-3));
    CHECK(order_dp >= 1.9);
    CHECK(order_d2p >= 1.9);
}
