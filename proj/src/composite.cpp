#include "rns/composite.hpp"

#include <cmath>

#include "rns/csv.hpp"

namespace rns {

CompositeWave make_composite(const GasModel& g, const WaveProfile& p1, const WaveProfile& p2,
                             double lambda1, double lambda2) {
    if (p1.link.family != 1 || p2.link.family != 2)
        throw std::invalid_argument("make_composite: profiles must be families 1 and 2 in order");
    if (p1.link.right.v != p2.link.left.v || p1.link.right.u != p2.link.left.u)
        throw std::invalid_argument("make_composite: profiles do not share the middle state");

    CompositeWave w;
    w.p1 = p1;
    w.p2 = p2;
    w.mid = p1.link.right;
    w.p_mid = p1.link.p_right;
    w.gas = g;
    w.lambda1 = lambda1 > 0.0 ? lambda1 : std::sqrt(p1.link.delta);
    w.lambda2 = lambda2 > 0.0 ? lambda2 : std::sqrt(p2.link.delta);

    const auto check_lambda = [](double lam, double delta, const char* name) {
        if (!(lam > 0.0 && lam < 1.0))
            throw ConfigError(std::string(name) + " must lie in (0,1), got " + fmt17(lam));
        if (!(lam >= delta))
            throw ConfigError(std::string(name) + " = " + fmt17(lam) +
                              " must be at least the pressure strength " + fmt17(delta));
    };
    check_lambda(w.lambda1, p1.link.delta, "lambda1");
    check_lambda(w.lambda2, p2.link.delta, "lambda2");
    return w;
}

CompositeState eval_composite(const CompositeWave& w, double t, double x, double X1, double X2) {
    const ProfileSample s1 = eval(w.p1, x - w.p1.link.sigma * t - X1);
    const ProfileSample s2 = eval(w.p2, x - w.p2.link.sigma * t - X2);
    return {s1.v + s2.v - w.mid.v, s1.u + s2.u - w.mid.u, s1.Pi + s2.Pi};
}

double weight_a(const CompositeWave& w, double t, double x, double X1, double X2) {
    const ProfileSample s1 = eval(w.p1, x - w.p1.link.sigma * t - X1);
    const ProfileSample s2 = eval(w.p2, x - w.p2.link.sigma * t - X2);
    const double a1 = w.lambda1 * (w.p_mid - pressure(w.gas, s1.v)) / w.p1.link.delta;
    const double a2 = w.lambda2 * (w.p_mid - pressure(w.gas, s2.v)) / w.p2.link.delta;
    return 1.0 + a1 + a2;
}

double source_F1(const CompositeWave& w, double t, double x, double X1, double X2) {
    const double xi1 = x - w.p1.link.sigma * t - X1;
    const double xi2 = x - w.p2.link.sigma * t - X2;
    const double d1 = eval_dv(w.p1, xi1);
    const double d2 = eval_dv(w.p2, xi2);
    if (d1 == 0.0 && d2 == 0.0) return 0.0;
    const ProfileSample s1 = eval(w.p1, xi1);
    const ProfileSample s2 = eval(w.p2, xi2);
    const double v = s1.v + s2.v - w.mid.v;
    return dpressure(w.gas, v) * (d1 + d2) - dpressure(w.gas, s1.v) * d1 -
           dpressure(w.gas, s2.v) * d2;
}

double source_F2(const CompositeWave& w, double t, double x, double X1, double X2) {
    const ProfileSample s1 = eval(w.p1, x - w.p1.link.sigma * t - X1);
    const ProfileSample s2 = eval(w.p2, x - w.p2.link.sigma * t - X2);
    return (s2.v - w.mid.v) * s1.Pi + (s1.v - w.mid.v) * s2.Pi;
}

}  // namespace rns
