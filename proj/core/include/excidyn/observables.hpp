#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "excidyn/bath_grid.hpp"
#include "excidyn/system_params.hpp"

namespace excidyn {

// Two-branch coherent superposition of the exciton mode.
struct CatSpec {
    cplx c1{0.7071067811865476, 0.0};
    cplx c2{0.7071067811865476, 0.0};
    cplx alpha1{0.0, 0.0};
    cplx alpha2{0.0, 0.0};

    // alpha1 = alpha, alpha2 = alpha * e^{i dphi}.
    static CatSpec phase_shifted(cplx alpha, double dphi);

    // Branch phase shift arg(alpha2/alpha1); defined only for equal-radius
    // branches (|alpha1| == |alpha2| within 1e-12), throws otherwise.
    double dphi() const;

    bool operator==(const CatSpec&) const = default;
};

void validate(const CatSpec& cat);

// One branch of the evolved state: a unit-modulus prefactor and the coherent
// labels of the exciton mode and of each bath mode.
struct BranchState {
    cplx prefactor_phase{1.0, 0.0};
    cplx exciton_label{0.0, 0.0};
    std::vector<cplx> field_labels;
};

struct DecoherenceReport {
    double t_fs = 0.0;
    cplx f_complex{1.0, 0.0};
    double f_norm = 1.0;      // exp(-D^2 (1-|u|^2) / 2); never touches the drive
    double phi = 0.0;         // analytic (unwrapped) phase of f_complex
    double d_distance = 0.0;  // |alpha1 - alpha2|
    double tau_d_fs = 0.0;    // +inf when the branches coincide
};

// Coefficients are stored as rotating-frame envelopes; `full` restores the
// global exp(-i*omega0*t) factor on all state labels.
enum class PhaseConvention { envelope, full };

enum class NormModel { exact, short_time };

// n0 |u|^2 + |w|^2 + (alpha u w* + c.c.) with n0 = |alpha|^2.
double mean_number(const SystemParams& p, cplx alpha, double t_fs);

BranchState evolve_product_state(const SystemParams& p, cplx alpha, const BathGrid& grid,
                                 double t_fs, PhaseConvention phase = PhaseConvention::envelope);

std::pair<BranchState, BranchState> evolve_cat_state(
    const SystemParams& p, const CatSpec& cat, const BathGrid& grid, double t_fs,
    PhaseConvention phase = PhaseConvention::envelope);

// Coefficient of the |branch1><branch2| off-diagonal element of the reduced
// exciton density matrix:
//   exp[(-|a1|^2/2 - |a2|^2/2 + conj(a1) a2)(1 - |u|^2)]
//     * exp[((a1 - a2) u w* - c.c.)/2].
cplx decoherence_factor(const SystemParams& p, cplx alpha1, cplx alpha2, double t_fs);

// Exact norm exp[-D^2 (1-|u|^2)/2] with D = 2|alpha| sin(dphi/2); the
// short_time model is the linear-in-t law exp[-2 |alpha|^2 sin^2(dphi/2) Gamma t]
// (kept for comparison only, see README).
double decoherence_norm(const SystemParams& p, cplx alpha, double dphi, double t_fs,
                        NormModel model = NormModel::exact);

// tau_d = hbar / (2 |alpha|^2 Gamma sin^2(dphi/2)) = 2 tau_p / D^2, in fs.
// Throws for coinciding branches (D = 0).
double decoherence_time(cplx alpha, double dphi, double gamma_mev);
double decoherence_time_from_distance(double distance, double gamma_mev);

double cat_distance(cplx alpha1, cplx alpha2);

// Phase of the decoherence factor for the dphi = pi cat: 2 Im(alpha u w*).
double phase_phi(const SystemParams& p, cplx alpha, double t_fs);

// |alpha|^2 - [sum_j |alpha u_j + v_j|^2 + |alpha u + w|^2 + (A + B alpha + c.c.)]
// evaluated with the closed forms on the given grid; a finite-grid
// diagnostic that tends to zero as the grid converges.
double sum_rule_residual(const SystemParams& p, cplx alpha, const BathGrid& grid, double t_fs);

DecoherenceReport decoherence_report(const SystemParams& p, cplx alpha1, cplx alpha2,
                                     double t_fs);

}  // namespace excidyn
