#pragma once

#include <complex>
#include <random>

#include "excidyn/system_params.hpp"
#include "excidyn/units.hpp"

namespace testutil {

using excidyn::cplx;

// Built-in parameter sets used throughout the suite: a weakly damped drive
// scenario and a strongly damped phase scenario.
inline excidyn::SystemParams weak_damping() {
    excidyn::SystemParams p;
    p.omega0 = 2000.0;
    p.gamma = 0.05;
    p.m_coupling = 20.0;
    p.xi = 10.0;
    p.delta = 0.1;
    return p;
}

inline excidyn::SystemParams strong_damping() {
    excidyn::SystemParams p;
    p.omega0 = 2000.0;
    p.gamma = 20.0;
    p.m_coupling = 20.0;
    p.xi = 10.0;
    p.delta = 0.5;
    return p;
}

inline double over_gamma(double x, const excidyn::SystemParams& p) {
    return excidyn::gamma_time_to_fs(x, p.gamma);
}

// Deterministic generator for property-style checks.
class ParamGen {
public:
    explicit ParamGen(unsigned seed) : rng_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }

    excidyn::SystemParams params(bool underdamped_only = false) {
        excidyn::SystemParams p;
        p.gamma = uniform(0.02, 30.0);
        p.m_coupling = underdamped_only ? uniform(p.gamma / 4.0 + 0.5, 40.0) : uniform(0.01, 40.0);
        p.xi = uniform(0.0, 15.0);
        p.delta = uniform(-3.0, 3.0);
        p.omega0 = 10.0 * p.gamma + uniform(100.0, 3000.0);
        return p;
    }

    cplx coherent(double max_radius = 4.0) {
        const double r = uniform(0.1, max_radius);
        const double ph = uniform(0.0, 6.283185307179586);
        return {r * std::cos(ph), r * std::sin(ph)};
    }

private:
    std::mt19937 rng_;
};

}  // namespace testutil
