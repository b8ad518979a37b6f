#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "excidyn/bath_grid.hpp"
#include "excidyn/observables.hpp"
#include "excidyn/system_params.hpp"

// Brute-force verifiers for the closed forms: fixed-step classical RK4 on the
// discretized-bath equations of motion and on the memory-kernel equation for
// u. Deterministic by construction (no adaptivity, no randomness).
namespace excidyn::oracle {

enum class ModeKind { coefficient_u, coefficient_w };

struct OracleRun {
    std::string method;
    std::vector<double> times_fs;
    std::vector<cplx> u_path;
    std::vector<cplx> w_path;
    std::vector<cplx> a_path;
    std::vector<cplx> b_path;
    // Row-major [sample][mode]; empty unless per-mode storage was requested.
    std::vector<cplx> uj_path;
    std::vector<cplx> vj_path;
    std::size_t mode_count = 0;

    double dt_fs = 0.0;
    std::size_t total_steps = 0;
    std::size_t grid_j = 0;
    double grid_window_mev = 0.0;
    double kernel_tail_fraction = 0.0;

    std::size_t samples() const { return times_fs.size(); }
    cplx uj_at(std::size_t row, std::size_t mode) const { return uj_path[row * mode_count + mode]; }
    cplx vj_at(std::size_t row, std::size_t mode) const { return vj_path[row * mode_count + mode]; }
};

// Default production step: rule * hbar / max relevant rate (window included
// for grid runs). The integrators reject anything above 10x this default.
double default_dt_fs(const SystemParams& p, const BathGrid* grid, double rule = 0.01);

// u'(tau) = -Int_0^tau K(tau - s) u(s) ds with the single-exponential kernel
// closed into an auxiliary memory variable updated in O(1) per step.
OracleRun solve_volterra_u(const SystemParams& p, double t_end_fs, double dt_fs,
                           std::size_t samples = 201);

// Coherent-label equations on the grid, in the frame rotating at omega0.
// coefficient_u: unit initial label, drive off -> recovers u, u_j.
// coefficient_w: vacuum initial label, drive on  -> recovers w, v_j.
OracleRun integrate_mode_equations(const SystemParams& p, const BathGrid& grid, ModeKind kind,
                                   double t_end_fs, double dt_fs, std::size_t samples = 201,
                                   bool store_modes = true);

// The six coupled coefficient blocks (u, w, A, B, u_j, v_j) in one pass.
OracleRun integrate_coefficient_odes(const SystemParams& p, const BathGrid& grid,
                                     double t_end_fs, double dt_fs, std::size_t samples = 201,
                                     bool store_modes = true);

// Norm residual |alpha|^2 - [...] computed from the run's own integrated
// coefficients at the given sample row. Exactly conserved by the grid
// dynamics, so this isolates integrator error from grid truncation.
double run_sum_rule_residual(const OracleRun& run, cplx alpha, std::size_t row);

// Decoherence factor from the integrated branches: conjugated branch-2
// overlap against branch-1 plus the accumulated prefactor phases, matching
// the analytic convention in observables.hpp.
cplx oracle_decoherence_factor(const SystemParams& p, const BathGrid& grid, const CatSpec& cat,
                               double t_fs, double dt_fs);

struct DecoherencePath {
    std::vector<double> times_fs;
    std::vector<cplx> factors;
};
DecoherencePath oracle_decoherence_factor_path(const SystemParams& p, const BathGrid& grid,
                                               const CatSpec& cat, double t_end_fs, double dt_fs,
                                               std::size_t samples = 201);

struct Tolerances {
    double u = 5e-3;
    double w = 5e-3;
    double uj = 5e-3;
    double vj = 5e-3;
    double a = 5e-3;
    double b = 5e-3;
    Tolerances() = default;
    explicit Tolerances(double all) : u(all), w(all), uj(all), vj(all), a(all), b(all) {}
};

struct ComparisonEntry {
    std::string name;
    double max_abs_error = 0.0;
    double max_rel_error = 0.0;
    double tolerance = 0.0;  // absolute, applied to max_abs_error
    bool pass = true;
};

struct ComparisonReport {
    std::string method;
    std::vector<ComparisonEntry> entries;
    double t_begin_fs = 0.0;
    double t_end_fs = 0.0;
    double dt_fs = 0.0;
    std::size_t grid_j = 0;
    double grid_window_mev = 0.0;
    double kernel_tail_fraction = 0.0;

    bool pass() const;
    const ComparisonEntry* find(const std::string& name) const;
};

// Closed-form samplers evaluated at arbitrary times; any member may be empty.
struct AnalyticSamplers {
    std::function<cplx(double)> u;
    std::function<cplx(double)> w;
    std::function<cplx(double)> a;
    std::function<cplx(double)> b;
    std::function<cplx(double, std::size_t)> uj;  // (t_fs, mode index)
    std::function<cplx(double, std::size_t)> vj;
};

AnalyticSamplers closed_form_samplers(const SystemParams& p, const BathGrid* grid);

// Analytic-vs-run comparison at the run's sample times. Per-mode paths are
// compared at the listed mode indices (default: resonant mode only).
ComparisonReport compare_runs(const AnalyticSamplers& analytic, const OracleRun& run,
                              const Tolerances& tol, std::vector<std::size_t> modes = {});

// Run-vs-run comparison (step-halving studies); time grids must coincide.
ComparisonReport compare_runs(const OracleRun& lhs, const OracleRun& rhs, const Tolerances& tol);

}  // namespace excidyn::oracle
