#pragma once

#include <complex>
#include <string>
#include <vector>

namespace excidyn {

using cplx = std::complex<double>;

// Physical constants of the driven exciton / lossy quasimode model (meV).
struct SystemParams {
    double omega0 = 2000.0;    // transition energy of the isolated exciton
    double gamma = 0.05;       // quasimode decay rate
    double m_coupling = 20.0;  // collective exciton-quasimode coupling
    double xi = 10.0;          // cw drive amplitude
    double delta = 0.1;        // drive detuning from the transition

    bool operator==(const SystemParams&) const = default;
};

// A complex frequency/energy in meV.
struct ComplexRate {
    double re = 0.0;
    double im = 0.0;
    cplx value() const { return {re, im}; }
};

// Hard invariants throw std::invalid_argument; soft ones come back as
// warnings (the kernel closed form assumes omega0 dominates every rate).
std::vector<std::string> validate(const SystemParams& p);

// M*Gamma - (Gamma/2)^2. Every coefficient below is an even function of the
// oscillation rate, so the squared value is the natural working quantity.
double theta_squared(const SystemParams& p);

// Principal square root of theta_squared: real when underdamped, positive
// imaginary when overdamped, exactly zero at critical damping.
ComplexRate theta(const SystemParams& p);

}  // namespace excidyn
