#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "rns/errors.hpp"

namespace rns {

// ============================================================================
// Constitutive layer: gamma-law pressure in Lagrangian (mass) coordinates,
// its convex potential, and the relative (Bregman) quantities built from it.
// All functions are pure; volume arguments must be strictly positive.
// ============================================================================

struct GasModel {
    double gamma = 1.4;  // adiabatic exponent, > 1
    double mu = 1.0;     // viscosity, > 0
    double tau = 0.0;    // stress relaxation time, >= 0

    GasModel() = default;
    GasModel(double gamma_, double mu_, double tau_) : gamma(gamma_), mu(mu_), tau(tau_) {
        if (!(gamma > 1.0)) throw ConfigError("GasModel: gamma must exceed 1, got " + std::to_string(gamma_));
        if (!(mu > 0.0)) throw ConfigError("GasModel: mu must be positive, got " + std::to_string(mu_));
        if (!(tau >= 0.0)) throw ConfigError("GasModel: tau must be nonnegative, got " + std::to_string(tau_));
    }
};

inline void require_positive_volume(double v, const char* where) {
    if (!(v > 0.0)) throw std::domain_error(std::string(where) + ": volume must be positive, got " + std::to_string(v));
}

// p(v) = v^(-gamma)
inline double pressure(const GasModel& g, double v) {
    require_positive_volume(v, "pressure");
    return std::pow(v, -g.gamma);
}

// p'(v) = -gamma v^(-gamma-1)  (always negative)
inline double dpressure(const GasModel& g, double v) {
    require_positive_volume(v, "dpressure");
    return -g.gamma * std::pow(v, -g.gamma - 1.0);
}

// p''(v) = gamma (gamma+1) v^(-gamma-2)  (always positive)
inline double d2pressure(const GasModel& g, double v) {
    require_positive_volume(v, "d2pressure");
    return g.gamma * (g.gamma + 1.0) * std::pow(v, -g.gamma - 2.0);
}

// One pow() for the hot loops: returns p(v) and p'(v) = -gamma p(v)/v.
struct PressurePair {
    double p;
    double dp;
};
inline PressurePair pressure_pair(const GasModel& g, double v) {
    require_positive_volume(v, "pressure_pair");
    const double p = std::pow(v, -g.gamma);
    return {p, -g.gamma * p / v};
}

// H(v) = v^(1-gamma)/(gamma-1); convex, H'(v) = -p(v), H''(v) = -p'(v) > 0.
inline double potential_H(const GasModel& g, double v) {
    require_positive_volume(v, "potential_H");
    return std::pow(v, 1.0 - g.gamma) / (g.gamma - 1.0);
}

// H(v|w) = H(v) - H(w) - H'(w)(v-w) = H(v) - H(w) + p(w)(v-w)  (>= 0)
inline double relative_H(const GasModel& g, double v, double w) {
    require_positive_volume(v, "relative_H");
    require_positive_volume(w, "relative_H");
    return potential_H(g, v) - potential_H(g, w) + pressure(g, w) * (v - w);
}

// p(v|w) = p(v) - p(w) - p'(w)(v-w)  (>= 0 by convexity of p)
inline double relative_p(const GasModel& g, double v, double w) {
    require_positive_volume(v, "relative_p");
    require_positive_volume(w, "relative_p");
    return pressure(g, v) - pressure(g, w) - dpressure(g, w) * (v - w);
}

}  // namespace rns
