#pragma once

#include <complex>
#include <vector>

#include "excidyn/system_params.hpp"

namespace excidyn {

class BathGrid;

// Snapshot of the time-dependent evolution coefficients. The per-mode
// arrays are aligned with the BathGrid they were evaluated on.
struct EvolutionCoefficients {
    double t_fs = 0.0;
    cplx u{1.0, 0.0};       // free-decay amplitude of the exciton mode
    cplx w{0.0, 0.0};       // drive response of the exciton mode
    cplx a_coef{0.0, 0.0};  // accumulated drive action (A)
    cplx b_coef{0.0, 0.0};  // drive cross term (B)
    std::vector<cplx> u_j;  // per-mode transfer amplitudes
    std::vector<cplx> v_j;  // per-mode drive responses
};

// All coefficients are rotating-frame envelopes: the common exp(-i*omega0*t)
// factor of the full state labels is applied only by the state-evolution
// helpers in observables.hpp, and cancels in every observable handled here.

// u(t) = [cos(Theta t) + Gamma/(2 Theta) sin(Theta t)] exp(-Gamma t/2),
// evaluated through even functions of Theta^2 so the critically damped and
// overdamped regimes need no branch cuts. Always real.
cplx coeff_u(const SystemParams& p, double t_fs);

// Driven response; linear in xi.
cplx coeff_w(const SystemParams& p, double t_fs);

// Amplitude transferred from an initial exciton excitation into the bath
// mode at omega_j with coupling g_j.
cplx coeff_uj(const SystemParams& p, double omega_j_mev, double g_j_mev, double t_fs);

// Drive response of the bath mode at omega_j: residue sum over the four
// simple poles of its Laplace image. Near-coincident poles are separated by
// nudging omega_j; the nudge is reported in the result metadata.
struct VjResult {
    cplx value{0.0, 0.0};
    bool regularized = false;
    double omega_shift_mev = 0.0;
};
VjResult coeff_vj_detail(const SystemParams& p, double omega_j_mev, double g_j_mev, double t_fs);
cplx coeff_vj(const SystemParams& p, double omega_j_mev, double g_j_mev, double t_fs);

// A(t) = -i xi Int_0^t w(t') e^{i delta t'} dt', integrated term by term in
// closed form (no quadrature); quadratic in xi.
cplx coeff_a(const SystemParams& p, double t_fs);

// B(t) = w(t) e^{i delta t}.
cplx coeff_b(const SystemParams& p, double t_fs);

// Envelope w_inf with w(t) -> w_inf e^{-i delta t} for t -> inf (Gamma > 0,
// M > 0; the undamped resonant corner M = 0, delta = 0 has no steady state
// and divides to infinity).
cplx steady_state_w(const SystemParams& p);

// Bath memory kernel M*Gamma*exp(-Gamma*|tau|) in meV^2 (real under the
// resonant quasimode approximation).
cplx kernel(const SystemParams& p, double tau_fs);

// Collective coupling sqrt(N) * eta * Gamma / sqrt((omega_j-omega0)^2 + Gamma^2).
double coupling_g(double omega_j_mev, double eta_mev, double gamma_mev, double omega0_mev,
                  double n_atoms);

EvolutionCoefficients evaluate_coefficients(const SystemParams& p, double t_fs);
EvolutionCoefficients evaluate_coefficients(const SystemParams& p, const BathGrid& grid,
                                            double t_fs);

}  // namespace excidyn
