#include "excidyn/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "excidyn/coefficients.hpp"
#include "excidyn/units.hpp"

namespace excidyn::oracle {

namespace {

constexpr double kDivergenceBound = 1e6;
constexpr std::size_t kMaxSteps = 1000000;

cplx expi(double phase) { return {std::cos(phase), std::sin(phase)}; }
cplx mul_neg_i(cplx z) { return {z.imag(), -z.real()}; }

double volterra_rate_scale(const SystemParams& p) {
    return std::max(p.gamma, std::sqrt(p.m_coupling * p.gamma));
}

double grid_rate_scale(const SystemParams& p, const BathGrid& grid) {
    return std::max({grid.window_mev(), p.gamma, std::sqrt(p.m_coupling * p.gamma),
                     std::abs(p.delta)});
}

struct StepPlan {
    double dt_fs;
    std::size_t per_segment;
    std::size_t segments;
    std::size_t total() const { return per_segment * segments; }
};

// The requested step is only tightened so that an integer number of steps
// lands exactly on every sample time; identical sample counts therefore give
// identical time grids regardless of the dt rule, which keeps step-halving
// comparisons aligned.
StepPlan plan_steps(double t_end_fs, double dt_req_fs, std::size_t samples, double rate_scale) {
    if (!(t_end_fs > 0.0)) throw std::invalid_argument("oracle: t_end must be > 0");
    if (!(dt_req_fs > 0.0)) throw std::invalid_argument("oracle: dt must be > 0");
    if (samples < 2) throw std::invalid_argument("oracle: need at least 2 samples");
    const double gate = 0.1 * kHbarMeVFs / rate_scale;
    if (dt_req_fs > gate) {
        throw std::invalid_argument(
            "oracle: step size " + std::to_string(dt_req_fs) + " fs exceeds the accuracy gate " +
            std::to_string(gate) + " fs (0.1*hbar/max_rate); the production rule is 0.01");
    }
    const std::size_t segments = samples - 1;
    const double needed = t_end_fs / dt_req_fs;
    const auto per_segment = static_cast<std::size_t>(
        std::max(1.0, std::ceil(needed / static_cast<double>(segments) - 1e-12)));
    StepPlan plan{t_end_fs / static_cast<double>(per_segment * segments), per_segment, segments};
    if (plan.total() > kMaxSteps) {
        throw std::invalid_argument("oracle: t_end/dt asks for " + std::to_string(plan.total()) +
                                    " steps; the limit is 1e6");
    }
    return plan;
}

void check_divergence(const std::vector<cplx>& y, double t_fs) {
    for (const cplx& v : y) {
        if (!(std::abs(v.real()) < kDivergenceBound) || !(std::abs(v.imag()) < kDivergenceBound)) {
            throw std::runtime_error("oracle: state diverged (|label| > 1e6) at t = " +
                                     std::to_string(t_fs) + " fs");
        }
    }
}

// Classical fixed-step RK4 over a complex state vector.
template <class Deriv>
class Rk4 {
public:
    explicit Rk4(std::size_t dim) : k1_(dim), k2_(dim), k3_(dim), k4_(dim), tmp_(dim) {}

    void step(std::vector<cplx>& y, double tau, double h, Deriv& f) {
        const std::size_t n = y.size();
        f(tau, y, k1_);
        blend(y, 0.5 * h, k1_);
        f(tau + 0.5 * h, tmp_, k2_);
        blend(y, 0.5 * h, k2_);
        f(tau + 0.5 * h, tmp_, k3_);
        blend(y, h, k3_);
        f(tau + h, tmp_, k4_);
        const double h6 = h / 6.0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] += h6 * (k1_[i] + 2.0 * (k2_[i] + k3_[i]) + k4_[i]);
        }
    }

private:
    void blend(const std::vector<cplx>& y, double c, const std::vector<cplx>& k) {
        for (std::size_t i = 0; i < y.size(); ++i) tmp_[i] = y[i] + c * k[i];
    }
    std::vector<cplx> k1_, k2_, k3_, k4_, tmp_;
};

}  // namespace

double default_dt_fs(const SystemParams& p, const BathGrid* grid, double rule) {
    if (!(rule > 0.0) || rule > 0.1) {
        throw std::invalid_argument("oracle: dt rule must lie in (0, 0.1]");
    }
    const double scale = grid ? grid_rate_scale(p, *grid) : volterra_rate_scale(p);
    return rule * kHbarMeVFs / scale;
}

OracleRun solve_volterra_u(const SystemParams& p, double t_end_fs, double dt_fs,
                           std::size_t samples) {
    validate(p);
    const StepPlan plan = plan_steps(t_end_fs, dt_fs, samples, volterra_rate_scale(p));
    const double h = plan.dt_fs / kHbarMeVFs;
    const double mg = p.m_coupling * p.gamma;

    OracleRun run;
    run.method = "volterra_u";
    run.dt_fs = plan.dt_fs;
    run.total_steps = plan.total();
    run.times_fs.reserve(samples);
    run.u_path.reserve(samples);
    run.times_fs.push_back(0.0);
    run.u_path.push_back({1.0, 0.0});

    // State (u, m), m(t) = Int_0^t exp(-Gamma (t-s)) u(s) ds: the exponential
    // kernel closes the memory integral into one auxiliary variable, so each
    // step costs O(1) and the stepper keeps its full order.
    double u = 1.0;
    double m = 0.0;
    auto f = [&](double u_, double m_, double& du, double& dm) {
        du = -mg * m_;
        dm = u_ - p.gamma * m_;
    };
    std::size_t step = 0;
    for (std::size_t seg = 1; seg <= plan.segments; ++seg) {
        for (std::size_t i = 0; i < plan.per_segment; ++i, ++step) {
            double k1u, k1m, k2u, k2m, k3u, k3m, k4u, k4m;
            f(u, m, k1u, k1m);
            f(u + 0.5 * h * k1u, m + 0.5 * h * k1m, k2u, k2m);
            f(u + 0.5 * h * k2u, m + 0.5 * h * k2m, k3u, k3m);
            f(u + h * k3u, m + h * k3m, k4u, k4m);
            u += h / 6.0 * (k1u + 2.0 * (k2u + k3u) + k4u);
            m += h / 6.0 * (k1m + 2.0 * (k2m + k3m) + k4m);
        }
        const double t_fs = static_cast<double>(seg * plan.per_segment) * plan.dt_fs;
        if (!(std::abs(u) < kDivergenceBound)) {
            throw std::runtime_error("oracle: Volterra solution diverged at t = " +
                                     std::to_string(t_fs) + " fs");
        }
        run.times_fs.push_back(t_fs);
        run.u_path.push_back({u, 0.0});
    }
    return run;
}

OracleRun integrate_mode_equations(const SystemParams& p, const BathGrid& grid, ModeKind kind,
                                   double t_end_fs, double dt_fs, std::size_t samples,
                                   bool store_modes) {
    validate(p);
    const StepPlan plan = plan_steps(t_end_fs, dt_fs, samples, grid_rate_scale(p, grid));
    const double h = plan.dt_fs / kHbarMeVFs;
    const std::size_t nj = grid.size();
    const auto& det = grid.detunings();
    const auto& kap = grid.couplings();
    const double xi = kind == ModeKind::coefficient_u ? 0.0 : p.xi;

    // y[0] = exciton label, y[1 + j] = mode labels; frame rotating at omega0.
    std::vector<cplx> y(1 + nj, cplx{0.0, 0.0});
    y[0] = kind == ModeKind::coefficient_u ? cplx{1.0, 0.0} : cplx{0.0, 0.0};

    auto f = [&](double tau, const std::vector<cplx>& s, std::vector<cplx>& ds) {
        cplx acc{0.0, 0.0};
        for (std::size_t j = 0; j < nj; ++j) acc += kap[j] * s[1 + j];
        ds[0] = mul_neg_i(acc + xi * expi(-p.delta * tau));
        const cplx a = s[0];
        for (std::size_t j = 0; j < nj; ++j) {
            ds[1 + j] = mul_neg_i(det[j] * s[1 + j] + kap[j] * a);
        }
    };

    OracleRun run;
    run.method = kind == ModeKind::coefficient_u ? "modes_u" : "modes_w";
    run.dt_fs = plan.dt_fs;
    run.total_steps = plan.total();
    run.grid_j = nj;
    run.grid_window_mev = grid.window_mev();
    run.kernel_tail_fraction = grid.kernel_tail_fraction();
    if (store_modes) run.mode_count = nj;

    auto& label_path = kind == ModeKind::coefficient_u ? run.u_path : run.w_path;
    auto& mode_path = kind == ModeKind::coefficient_u ? run.uj_path : run.vj_path;
    auto sample = [&](double t_fs) {
        run.times_fs.push_back(t_fs);
        label_path.push_back(y[0]);
        if (store_modes) mode_path.insert(mode_path.end(), y.begin() + 1, y.end());
    };

    sample(0.0);
    Rk4<decltype(f)> rk(y.size());
    std::size_t step = 0;
    for (std::size_t seg = 1; seg <= plan.segments; ++seg) {
        for (std::size_t i = 0; i < plan.per_segment; ++i, ++step) {
            rk.step(y, static_cast<double>(step) * h, h, f);
        }
        const double t_fs = static_cast<double>(seg * plan.per_segment) * plan.dt_fs;
        check_divergence(y, t_fs);
        sample(t_fs);
    }
    return run;
}

OracleRun integrate_coefficient_odes(const SystemParams& p, const BathGrid& grid,
                                     double t_end_fs, double dt_fs, std::size_t samples,
                                     bool store_modes) {
    validate(p);
    const StepPlan plan = plan_steps(t_end_fs, dt_fs, samples, grid_rate_scale(p, grid));
    const double h = plan.dt_fs / kHbarMeVFs;
    const std::size_t nj = grid.size();
    const auto& det = grid.detunings();
    const auto& kap = grid.couplings();

    // Blocks: y[0] = u, y[1] = w, y[2] = A, y[3] = B, then u_j, then v_j.
    // In the rotating frame the six coupled equations collapse to
    //   u' = -i sum_j k_j u_j            u_j' = -i (d_j u_j + k_j u)
    //   w' = -i (sum_j k_j v_j + xi e^{-i delta tau})
    //   v_j' = -i (d_j v_j + k_j w)
    //   A' = -i xi w e^{i delta tau}     B' = -i xi u e^{i delta tau}
    std::vector<cplx> y(4 + 2 * nj, cplx{0.0, 0.0});
    y[0] = {1.0, 0.0};

    auto f = [&](double tau, const std::vector<cplx>& s, std::vector<cplx>& ds) {
        cplx su{0.0, 0.0};
        cplx sv{0.0, 0.0};
        for (std::size_t j = 0; j < nj; ++j) {
            su += kap[j] * s[4 + j];
            sv += kap[j] * s[4 + nj + j];
        }
        const cplx em = expi(-p.delta * tau);
        const cplx ep = std::conj(em);
        ds[0] = mul_neg_i(su);
        ds[1] = mul_neg_i(sv + p.xi * em);
        ds[2] = mul_neg_i(p.xi * s[1] * ep);
        ds[3] = mul_neg_i(p.xi * s[0] * ep);
        const cplx u = s[0];
        const cplx w = s[1];
        for (std::size_t j = 0; j < nj; ++j) {
            ds[4 + j] = mul_neg_i(det[j] * s[4 + j] + kap[j] * u);
            ds[4 + nj + j] = mul_neg_i(det[j] * s[4 + nj + j] + kap[j] * w);
        }
    };

    OracleRun run;
    run.method = "coefficient_odes";
    run.dt_fs = plan.dt_fs;
    run.total_steps = plan.total();
    run.grid_j = nj;
    run.grid_window_mev = grid.window_mev();
    run.kernel_tail_fraction = grid.kernel_tail_fraction();
    if (store_modes) run.mode_count = nj;

    auto sample = [&](double t_fs) {
        run.times_fs.push_back(t_fs);
        run.u_path.push_back(y[0]);
        run.w_path.push_back(y[1]);
        run.a_path.push_back(y[2]);
        run.b_path.push_back(y[3]);
        if (store_modes) {
            run.uj_path.insert(run.uj_path.end(), y.begin() + 4, y.begin() + 4 + nj);
            run.vj_path.insert(run.vj_path.end(), y.begin() + 4 + nj, y.end());
        }
    };

    sample(0.0);
    Rk4<decltype(f)> rk(y.size());
    std::size_t step = 0;
    for (std::size_t seg = 1; seg <= plan.segments; ++seg) {
        for (std::size_t i = 0; i < plan.per_segment; ++i, ++step) {
            rk.step(y, static_cast<double>(step) * h, h, f);
        }
        const double t_fs = static_cast<double>(seg * plan.per_segment) * plan.dt_fs;
        check_divergence(y, t_fs);
        sample(t_fs);
    }
    return run;
}

double run_sum_rule_residual(const OracleRun& run, cplx alpha, std::size_t row) {
    if (run.mode_count == 0 || run.a_path.empty()) {
        throw std::invalid_argument(
            "run_sum_rule_residual: needs a coefficient_odes run with stored modes");
    }
    double field = 0.0;
    for (std::size_t j = 0; j < run.mode_count; ++j) {
        field += std::norm(alpha * run.uj_at(row, j) + run.vj_at(row, j));
    }
    const cplx ex = alpha * run.u_path[row] + run.w_path[row];
    const double phases = 2.0 * std::real(run.a_path[row] + run.b_path[row] * alpha);
    return std::norm(alpha) - (field + std::norm(ex) + phases);
}

DecoherencePath oracle_decoherence_factor_path(const SystemParams& p, const BathGrid& grid,
                                               const CatSpec& cat, double t_end_fs, double dt_fs,
                                               std::size_t samples) {
    validate(cat);
    const OracleRun run = integrate_coefficient_odes(p, grid, t_end_fs, dt_fs, samples, true);
    DecoherencePath path;
    path.times_fs = run.times_fs;
    path.factors.resize(run.samples());
    for (std::size_t r = 0; r < run.samples(); ++r) {
        // Prefactor phases exp{i Im(A + B alpha_k)}; A cancels between the
        // branches but is kept for clarity of the conjugation order.
        const double ph1 = std::imag(run.a_path[r] + run.b_path[r] * cat.alpha1);
        const double ph2 = std::imag(run.a_path[r] + run.b_path[r] * cat.alpha2);
        cplx expo{0.0, ph2 - ph1};
        for (std::size_t j = 0; j < run.mode_count; ++j) {
            const cplx x = cat.alpha1 * run.uj_at(r, j) + run.vj_at(r, j);
            const cplx y = cat.alpha2 * run.uj_at(r, j) + run.vj_at(r, j);
            expo += std::conj(x) * y - 0.5 * (std::norm(x) + std::norm(y));
        }
        path.factors[r] = std::exp(expo);
    }
    return path;
}

cplx oracle_decoherence_factor(const SystemParams& p, const BathGrid& grid, const CatSpec& cat,
                               double t_fs, double dt_fs) {
    return oracle_decoherence_factor_path(p, grid, cat, t_fs, dt_fs, 2).factors.back();
}

bool ComparisonReport::pass() const {
    for (const auto& e : entries) {
        if (!e.pass) return false;
    }
    return true;
}

const ComparisonEntry* ComparisonReport::find(const std::string& name) const {
    for (const auto& e : entries) {
        if (e.name == name) return &e;
    }
    return nullptr;
}

AnalyticSamplers closed_form_samplers(const SystemParams& p, const BathGrid* grid) {
    AnalyticSamplers s;
    s.u = [p](double t) { return coeff_u(p, t); };
    s.w = [p](double t) { return coeff_w(p, t); };
    s.a = [p](double t) { return coeff_a(p, t); };
    s.b = [p](double t) { return coeff_b(p, t); };
    if (grid != nullptr) {
        s.uj = [p, grid](double t, std::size_t j) {
            return coeff_uj(p, grid->mode_energy(j), grid->coupling(j), t);
        };
        s.vj = [p, grid](double t, std::size_t j) {
            return coeff_vj(p, grid->mode_energy(j), grid->coupling(j), t);
        };
    }
    return s;
}

namespace {

ComparisonEntry compare_path(const std::string& name, const std::vector<double>& times,
                             const std::vector<cplx>& reference,
                             const std::function<cplx(double, std::size_t)>& candidate,
                             double tolerance) {
    ComparisonEntry e;
    e.name = name;
    e.tolerance = tolerance;
    double peak = 0.0;
    for (std::size_t r = 0; r < times.size(); ++r) {
        const cplx ref = reference[r];
        peak = std::max(peak, std::abs(ref));
        e.max_abs_error = std::max(e.max_abs_error, std::abs(candidate(times[r], r) - ref));
    }
    // Relative to the path's peak magnitude; identically zero paths compare
    // on absolute error alone.
    e.max_rel_error = peak > 0.0 ? e.max_abs_error / peak : e.max_abs_error;
    e.pass = e.max_abs_error <= tolerance;
    return e;
}

}  // namespace

ComparisonReport compare_runs(const AnalyticSamplers& analytic, const OracleRun& run,
                              const Tolerances& tol, std::vector<std::size_t> modes) {
    ComparisonReport rep;
    rep.method = run.method;
    rep.t_begin_fs = run.times_fs.front();
    rep.t_end_fs = run.times_fs.back();
    rep.dt_fs = run.dt_fs;
    rep.grid_j = run.grid_j;
    rep.grid_window_mev = run.grid_window_mev;
    rep.kernel_tail_fraction = run.kernel_tail_fraction;

    const auto& t = run.times_fs;
    if (!run.u_path.empty() && analytic.u) {
        rep.entries.push_back(compare_path(
            "u", t, run.u_path, [&](double tf, std::size_t) { return analytic.u(tf); }, tol.u));
    }
    if (!run.w_path.empty() && analytic.w) {
        rep.entries.push_back(compare_path(
            "w", t, run.w_path, [&](double tf, std::size_t) { return analytic.w(tf); }, tol.w));
    }
    if (!run.a_path.empty() && analytic.a) {
        rep.entries.push_back(compare_path(
            "A", t, run.a_path, [&](double tf, std::size_t) { return analytic.a(tf); }, tol.a));
    }
    if (!run.b_path.empty() && analytic.b) {
        rep.entries.push_back(compare_path(
            "B", t, run.b_path, [&](double tf, std::size_t) { return analytic.b(tf); }, tol.b));
    }
    if (run.mode_count > 0 && modes.empty()) modes.push_back(run.mode_count / 2);
    for (std::size_t j : modes) {
        if (j >= run.mode_count) throw std::invalid_argument("compare_runs: mode index out of range");
        const std::string suffix = j == run.mode_count / 2 ? "" : "[" + std::to_string(j) + "]";
        if (!run.uj_path.empty() && analytic.uj) {
            std::vector<cplx> ref(run.samples());
            for (std::size_t r = 0; r < run.samples(); ++r) ref[r] = run.uj_at(r, j);
            rep.entries.push_back(compare_path(
                "u_j" + suffix, t, ref, [&](double tf, std::size_t) { return analytic.uj(tf, j); },
                tol.uj));
        }
        if (!run.vj_path.empty() && analytic.vj) {
            std::vector<cplx> ref(run.samples());
            for (std::size_t r = 0; r < run.samples(); ++r) ref[r] = run.vj_at(r, j);
            rep.entries.push_back(compare_path(
                "v_j" + suffix, t, ref, [&](double tf, std::size_t) { return analytic.vj(tf, j); },
                tol.vj));
        }
    }
    return rep;
}

ComparisonReport compare_runs(const OracleRun& lhs, const OracleRun& rhs, const Tolerances& tol) {
    if (lhs.samples() != rhs.samples()) {
        throw std::invalid_argument("compare_runs: misaligned time grids (sample counts differ)");
    }
    for (std::size_t r = 0; r < lhs.samples(); ++r) {
        if (std::abs(lhs.times_fs[r] - rhs.times_fs[r]) > 1e-9) {
            throw std::invalid_argument("compare_runs: misaligned time grids at row " +
                                        std::to_string(r));
        }
    }
    ComparisonReport rep;
    rep.method = lhs.method + "|" + rhs.method;
    rep.t_begin_fs = lhs.times_fs.front();
    rep.t_end_fs = lhs.times_fs.back();
    rep.dt_fs = std::max(lhs.dt_fs, rhs.dt_fs);
    rep.grid_j = lhs.grid_j;
    rep.grid_window_mev = lhs.grid_window_mev;
    rep.kernel_tail_fraction = lhs.kernel_tail_fraction;

    auto add = [&](const std::string& name, const std::vector<cplx>& a,
                   const std::vector<cplx>& b, double tolerance) {
        if (a.empty() || b.empty()) return;
        rep.entries.push_back(compare_path(
            name, lhs.times_fs, a, [&](double, std::size_t r) { return b[r]; }, tolerance));
    };
    add("u", lhs.u_path, rhs.u_path, tol.u);
    add("w", lhs.w_path, rhs.w_path, tol.w);
    add("A", lhs.a_path, rhs.a_path, tol.a);
    add("B", lhs.b_path, rhs.b_path, tol.b);
    return rep;
}

}  // namespace excidyn::oracle
