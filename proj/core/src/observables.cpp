#include "excidyn/observables.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "excidyn/coefficients.hpp"
#include "excidyn/units.hpp"

namespace excidyn {

namespace {
cplx expi(double phase) { return {std::cos(phase), std::sin(phase)}; }
}  // namespace

CatSpec CatSpec::phase_shifted(cplx alpha, double dphi) {
    CatSpec cat;
    cat.alpha1 = alpha;
    cat.alpha2 = alpha * expi(dphi);
    return cat;
}

double CatSpec::dphi() const {
    if (std::abs(std::abs(alpha1) - std::abs(alpha2)) > 1e-12) {
        throw std::domain_error("CatSpec: dphi is defined only for equal-radius branches");
    }
    return std::arg(alpha2 / alpha1);
}

void validate(const CatSpec& cat) {
    if (cat.c1 == cplx{0.0, 0.0} && cat.c2 == cplx{0.0, 0.0}) {
        throw std::invalid_argument("CatSpec: weights (c1, c2) must not both vanish");
    }
}

double mean_number(const SystemParams& p, cplx alpha, double t_fs) {
    const double u = coeff_u(p, t_fs).real();
    const cplx w = coeff_w(p, t_fs);
    return std::norm(alpha) * u * u + std::norm(w) + 2.0 * std::real(alpha * u * std::conj(w));
}

BranchState evolve_product_state(const SystemParams& p, cplx alpha, const BathGrid& grid,
                                 double t_fs, PhaseConvention phase) {
    BranchState b;
    b.exciton_label = alpha * coeff_u(p, t_fs) + coeff_w(p, t_fs);
    b.field_labels.resize(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        b.field_labels[j] = alpha * coeff_uj(p, grid.mode_energy(j), grid.coupling(j), t_fs) +
                            coeff_vj(p, grid.mode_energy(j), grid.coupling(j), t_fs);
    }
    if (phase == PhaseConvention::full) {
        const cplx rot = expi(-p.omega0 * to_phase_time(t_fs));
        b.exciton_label *= rot;
        for (auto& label : b.field_labels) label *= rot;
    }
    return b;
}

std::pair<BranchState, BranchState> evolve_cat_state(const SystemParams& p, const CatSpec& cat,
                                                     const BathGrid& grid, double t_fs,
                                                     PhaseConvention phase) {
    validate(cat);
    const cplx a = coeff_a(p, t_fs);
    const cplx b = coeff_b(p, t_fs);
    BranchState b1 = evolve_product_state(p, cat.alpha1, grid, t_fs, phase);
    BranchState b2 = evolve_product_state(p, cat.alpha2, grid, t_fs, phase);
    // (A + B alpha)/2 - c.c. is purely imaginary: the real part of A is
    // absorbed into the coherent labels' normalization.
    b1.prefactor_phase = expi(std::imag(a + b * cat.alpha1));
    b2.prefactor_phase = expi(std::imag(a + b * cat.alpha2));
    return {std::move(b1), std::move(b2)};
}

cplx decoherence_factor(const SystemParams& p, cplx alpha1, cplx alpha2, double t_fs) {
    const double u = coeff_u(p, t_fs).real();
    const cplx w = coeff_w(p, t_fs);
    const double shed = 1.0 - u * u;
    const double log_norm = -0.5 * std::norm(alpha1 - alpha2) * shed;
    const double phase =
        std::imag(std::conj(alpha1) * alpha2) * shed + std::imag((alpha1 - alpha2) * u * std::conj(w));
    return std::exp(log_norm) * expi(phase);
}

double decoherence_norm(const SystemParams& p, cplx alpha, double dphi, double t_fs,
                        NormModel model) {
    const double sin_half = std::sin(0.5 * dphi);
    if (model == NormModel::short_time) {
        const double tau = to_phase_time(t_fs);
        return std::exp(-2.0 * std::norm(alpha) * sin_half * sin_half * p.gamma * tau);
    }
    const double u = coeff_u(p, t_fs).real();
    const double d2 = 4.0 * std::norm(alpha) * sin_half * sin_half;
    return std::exp(-0.5 * d2 * (1.0 - u * u));
}

double decoherence_time_from_distance(double distance, double gamma_mev) {
    if (distance == 0.0) {
        throw std::invalid_argument("decoherence_time: branches coincide; no decoherence timescale");
    }
    const double tau_p_fs = kHbarMeVFs / gamma_mev;
    return 2.0 * tau_p_fs / (distance * distance);
}

double decoherence_time(cplx alpha, double dphi, double gamma_mev) {
    const double sin_half = std::sin(0.5 * dphi);
    const double d2 = 4.0 * std::norm(alpha) * sin_half * sin_half;
    if (d2 == 0.0) {
        throw std::invalid_argument("decoherence_time: branches coincide; no decoherence timescale");
    }
    const double tau_p_fs = kHbarMeVFs / gamma_mev;
    return 2.0 * tau_p_fs / d2;
}

double cat_distance(cplx alpha1, cplx alpha2) { return std::abs(alpha1 - alpha2); }

double phase_phi(const SystemParams& p, cplx alpha, double t_fs) {
    const double u = coeff_u(p, t_fs).real();
    const cplx w = coeff_w(p, t_fs);
    return 2.0 * std::imag(alpha * u * std::conj(w));
}

double sum_rule_residual(const SystemParams& p, cplx alpha, const BathGrid& grid, double t_fs) {
    const double u = coeff_u(p, t_fs).real();
    const cplx w = coeff_w(p, t_fs);
    const cplx a = coeff_a(p, t_fs);
    const cplx b = coeff_b(p, t_fs);
    double field = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double wj = grid.mode_energy(j);
        const double kj = grid.coupling(j);
        field += std::norm(alpha * coeff_uj(p, wj, kj, t_fs) + coeff_vj(p, wj, kj, t_fs));
    }
    return std::norm(alpha) -
           (field + std::norm(alpha * u + w) + 2.0 * std::real(a + b * alpha));
}

DecoherenceReport decoherence_report(const SystemParams& p, cplx alpha1, cplx alpha2,
                                     double t_fs) {
    DecoherenceReport r;
    r.t_fs = t_fs;
    const double u = coeff_u(p, t_fs).real();
    const cplx w = coeff_w(p, t_fs);
    const double shed = 1.0 - u * u;
    r.d_distance = cat_distance(alpha1, alpha2);
    r.f_norm = std::exp(-0.5 * r.d_distance * r.d_distance * shed);
    r.phi = std::imag(std::conj(alpha1) * alpha2) * shed +
            std::imag((alpha1 - alpha2) * u * std::conj(w));
    r.f_complex = r.f_norm * expi(r.phi);
    r.tau_d_fs = r.d_distance == 0.0 ? std::numeric_limits<double>::infinity()
                                     : decoherence_time_from_distance(r.d_distance, p.gamma);
    return r;
}

}  // namespace excidyn
