#include "excidyn/coefficients.hpp"

#include <cmath>

#include "excidyn/bath_grid.hpp"
#include "excidyn/units.hpp"

namespace excidyn {

namespace {

constexpr cplx kI{0.0, 1.0};

cplx expi(double phase) { return {std::cos(phase), std::sin(phase)}; }

// cos(Theta tau) and sin(Theta tau)/Theta with the exp(-g tau) damping folded
// in, as even functions of Theta^2. theta_sq < 0 is the overdamped regime
// (|Theta| < g whenever M > 0, so both exponents stay non-positive); the
// series branch keeps the critically damped neighbourhood smooth.
struct DampedTrig {
    double c;  // cos(Theta tau) e^{-g tau}
    double s;  // sin(Theta tau)/Theta e^{-g tau}
};

DampedTrig damped_trig(double theta_sq, double g, double tau) {
    const double x = theta_sq * tau * tau;  // (Theta tau)^2 with regime sign
    if (std::abs(x) < 1e-8) {
        const double damp = std::exp(-g * tau);
        return {(1.0 - x / 2.0 + x * x / 24.0) * damp,
                tau * (1.0 - x / 6.0 + x * x / 120.0) * damp};
    }
    if (theta_sq > 0.0) {
        const double th = std::sqrt(theta_sq);
        const double damp = std::exp(-g * tau);
        return {std::cos(th * tau) * damp, std::sin(th * tau) / th * damp};
    }
    const double th = std::sqrt(-theta_sq);
    const double ep = std::exp((th - g) * tau);
    const double em = std::exp(-(th + g) * tau);
    return {0.5 * (ep + em), (ep - em) / (2.0 * th)};
}

// (e^x - 1)/x and (e^x - 1 - x)/x^2, entire, series near the origin.
cplx phi1(cplx x) {
    if (std::abs(x) < 1e-4) return 1.0 + x * (0.5 + x * (1.0 / 6.0 + x / 24.0));
    return (std::exp(x) - 1.0) / x;
}

cplx phi2(cplx x) {
    if (std::abs(x) < 1e-3) {
        return 0.5 + x * (1.0 / 6.0 + x * (1.0 / 24.0 + x * (1.0 / 120.0 + x / 720.0)));
    }
    return (std::exp(x) - 1.0 - x) / (x * x);
}

}  // namespace

cplx coeff_u(const SystemParams& p, double t_fs) {
    const double tau = to_phase_time(t_fs);
    const double g = 0.5 * p.gamma;
    const auto [c, s] = damped_trig(theta_squared(p), g, tau);
    return {c + g * s, 0.0};
}

// The two-pole form has 1/Theta singularities in each term that cancel in
// the sum; the terms are recombined over the common denominator
// (z^2 - Theta^2), z = delta + i Gamma/2, before anything divides by Theta.
cplx coeff_w(const SystemParams& p, double t_fs) {
    if (p.xi == 0.0) return {0.0, 0.0};
    const double tau = to_phase_time(t_fs);
    if (p.m_coupling == 0.0) {
        // Bath decoupled: plain driven oscillator.
        return -kI * p.xi * tau * phi1(-kI * p.delta * tau);
    }
    const double th2 = theta_squared(p);
    const double g = 0.5 * p.gamma;
    const auto [c, s] = damped_trig(th2, g, tau);
    const cplx z{p.delta, g};
    const cplx den = z * z - th2;  // zero only at M = 0, delta = 0
    const cplx num =
        (2.0 * z + kI * p.gamma) * (c - expi(-p.delta * tau)) + (p.gamma * z - 2.0 * kI * th2) * s;
    return -p.xi * num / (2.0 * den);
}

cplx coeff_uj(const SystemParams& p, double omega_j_mev, double g_j_mev, double t_fs) {
    if (g_j_mev == 0.0) return {0.0, 0.0};
    const double tau = to_phase_time(t_fs);
    const double dj = omega_j_mev - p.omega0;
    if (p.m_coupling == 0.0) {
        return -kI * g_j_mev * tau * phi1(-kI * dj * tau);
    }
    const double th2 = theta_squared(p);
    const double g = 0.5 * p.gamma;
    const auto [c, s] = damped_trig(th2, g, tau);
    const cplx z{dj, g};
    const cplx den = z * z - th2;
    const cplx num =
        (2.0 * z + kI * p.gamma) * (c - expi(-dj * tau)) + (p.gamma * z - 2.0 * kI * th2) * s;
    return -g_j_mev * num / (2.0 * den);
}

VjResult coeff_vj_detail(const SystemParams& p, double omega_j_mev, double g_j_mev,
                         double t_fs) {
    VjResult r{};
    if (p.xi == 0.0 || g_j_mev == 0.0 || t_fs == 0.0) return r;
    const double tau = to_phase_time(t_fs);
    double dj = omega_j_mev - p.omega0;

    if (p.m_coupling == 0.0) {
        if (std::abs(p.delta * tau) < 1e-6) {
            r.value = -g_j_mev * p.xi * tau * tau * phi2(-kI * dj * tau);
        } else {
            r.value = (kI * p.xi * g_j_mev / p.delta) * expi(-dj * tau) * tau *
                      (phi1(kI * dj * tau) - phi1(kI * (dj - p.delta) * tau));
        }
        return r;
    }

    // Laplace image poles: -Gamma/2 +- i Theta (handled as a recombined even
    // pair), -i delta, -i dj. The two imaginary poles can collide; separate
    // them by nudging the mode energy.
    int guard = 0;
    while (std::abs(dj - p.delta) < 1e-9 && guard++ < 1000) {
        dj += 1e-7 * p.gamma;
        r.regularized = true;
        r.omega_shift_mev += 1e-7 * p.gamma;
    }

    const double th2 = theta_squared(p);
    const double g = 0.5 * p.gamma;
    const auto [c, s] = damped_trig(th2, g, tau);
    const cplx zd{p.delta, g};
    const cplx zj{dj, g};
    const cplx den_d = zd * zd - th2;
    const cplx den_j = zj * zj - th2;
    const cplx pp = zd * zj + th2;
    const cplx qq = zd + zj;
    const cplx pair =
        g_j_mev * p.xi * (pp * (c + g * s) + kI * qq * (g * c - th2 * s)) / (den_d * den_j);
    const cplx tail =
        -kI * g_j_mev * p.xi *
        (cplx{p.gamma, -p.delta} * expi(-p.delta * tau) / (den_d * (dj - p.delta)) +
         cplx{p.gamma, -dj} * expi(-dj * tau) / (den_j * (p.delta - dj)));
    r.value = pair + tail;
    return r;
}

cplx coeff_vj(const SystemParams& p, double omega_j_mev, double g_j_mev, double t_fs) {
    return coeff_vj_detail(p, omega_j_mev, g_j_mev, t_fs).value;
}

// Each term of w(t') e^{i delta t'} is a pure exponential; the primitives
// below are the even-function closed forms of Int cos(Theta t') e^{p t'} and
// Int sin(Theta t')/Theta e^{p t'} with p = i delta - Gamma/2.
cplx coeff_a(const SystemParams& p, double t_fs) {
    if (p.xi == 0.0) return {0.0, 0.0};
    const double tau = to_phase_time(t_fs);
    if (p.m_coupling == 0.0) {
        return -p.xi * p.xi * tau * tau * phi2(kI * p.delta * tau);
    }
    const double th2 = theta_squared(p);
    const double g = 0.5 * p.gamma;
    const auto [c, s] = damped_trig(th2, g, tau);
    const cplx z{p.delta, g};
    const cplx den = z * z - th2;
    const cplx pe = kI * z;  // i delta - Gamma/2
    const cplx eid = expi(p.delta * tau);
    const cplx ic = (eid * (pe * c + th2 * s) - pe) / (-den);
    const cplx is = (eid * (pe * s - c) + 1.0) / (-den);
    return kI * p.xi * p.xi *
           ((2.0 * z + kI * p.gamma) * (ic - tau) + (p.gamma * z - 2.0 * kI * th2) * is) /
           (2.0 * den);
}

cplx coeff_b(const SystemParams& p, double t_fs) {
    const cplx w = coeff_w(p, t_fs);
    if (w == cplx{0.0, 0.0}) return w;
    return w * expi(p.delta * to_phase_time(t_fs));
}

cplx steady_state_w(const SystemParams& p) {
    if (p.xi == 0.0) return {0.0, 0.0};
    const double g = 0.5 * p.gamma;
    const cplx z{p.delta, g};
    const cplx den = z * z - theta_squared(p);
    return p.xi * cplx{p.delta, p.gamma} / den;
}

cplx kernel(const SystemParams& p, double tau_fs) {
    const double tau = to_phase_time(tau_fs);
    return {p.m_coupling * p.gamma * std::exp(-p.gamma * std::abs(tau)), 0.0};
}

double coupling_g(double omega_j_mev, double eta_mev, double gamma_mev, double omega0_mev,
                  double n_atoms) {
    const double dj = omega_j_mev - omega0_mev;
    return std::sqrt(n_atoms) * eta_mev * gamma_mev / std::sqrt(dj * dj + gamma_mev * gamma_mev);
}

EvolutionCoefficients evaluate_coefficients(const SystemParams& p, double t_fs) {
    EvolutionCoefficients ec;
    ec.t_fs = t_fs;
    ec.u = coeff_u(p, t_fs);
    ec.w = coeff_w(p, t_fs);
    ec.a_coef = coeff_a(p, t_fs);
    ec.b_coef = coeff_b(p, t_fs);
    return ec;
}

EvolutionCoefficients evaluate_coefficients(const SystemParams& p, const BathGrid& grid,
                                            double t_fs) {
    EvolutionCoefficients ec = evaluate_coefficients(p, t_fs);
    ec.u_j.resize(grid.size());
    ec.v_j.resize(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        ec.u_j[j] = coeff_uj(p, grid.mode_energy(j), grid.coupling(j), t_fs);
        ec.v_j[j] = coeff_vj(p, grid.mode_energy(j), grid.coupling(j), t_fs);
    }
    return ec;
}

}  // namespace excidyn
