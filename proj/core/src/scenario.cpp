#include "excidyn/scenario.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "excidyn/coefficients.hpp"
#include "excidyn/observables.hpp"
#include "excidyn/units.hpp"

namespace excidyn::harness {

Fig2Variant parse_fig2_variant(const std::string& name) {
    if (name == "a") return Fig2Variant::a;
    if (name == "b") return Fig2Variant::b;
    if (name == "c") return Fig2Variant::c;
    throw std::invalid_argument("unknown fig2 variant '" + name + "' (expected a, b or c)");
}

SweepAxis parse_sweep_axis(const std::string& name) {
    if (name == "xi") return SweepAxis::xi;
    if (name == "delta") return SweepAxis::delta;
    if (name == "gamma") return SweepAxis::gamma;
    if (name == "m_coupling") return SweepAxis::m_coupling;
    if (name == "n0") return SweepAxis::n0;
    if (name == "dphi") return SweepAxis::dphi;
    throw std::invalid_argument(
        "unknown sweep axis '" + name + "' (expected xi, delta, gamma, m_coupling, n0 or dphi)");
}

std::string sweep_axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::xi: return "xi";
        case SweepAxis::delta: return "delta";
        case SweepAxis::gamma: return "gamma";
        case SweepAxis::m_coupling: return "m_coupling";
        case SweepAxis::n0: return "n0";
        case SweepAxis::dphi: return "dphi";
    }
    return "?";
}

CsvTable run_fig1(const ScenarioConfig& cfg) {
    const SystemParams driven = cfg.system;
    SystemParams undriven = cfg.system;
    undriven.xi = 0.0;
    const cplx alpha = cfg.initial.alpha;

    const std::size_t n = cfg.run.samples;
    const double t_end = cfg.t_end_fs();
    const double inset_end = gamma_time_to_fs(cfg.run.inset_t_end_over_gamma, cfg.system.gamma);

    CsvTable table;
    table.header = {"t_over_gamma_inv",       "mean_n_driven",       "mean_n_undriven",
                    "t_inset_over_gamma_inv", "mean_n_driven_inset", "mean_n_undriven_inset"};
    for (std::size_t r = 0; r < n; ++r) {
        const double frac = static_cast<double>(r) / static_cast<double>(n - 1);
        const double t = frac * t_end;
        const double ti = frac * inset_end;
        append_row(table, {fs_to_gamma_time(t, cfg.system.gamma), mean_number(driven, alpha, t),
                           mean_number(undriven, alpha, t), fs_to_gamma_time(ti, cfg.system.gamma),
                           mean_number(driven, alpha, ti), mean_number(undriven, alpha, ti)});
    }
    return table;
}

CsvTable run_fig2(const ScenarioConfig& cfg, Fig2Variant variant) {
    SystemParams params = cfg.system;
    const cplx alpha = cfg.initial.alpha;
    const std::size_t n = cfg.run.samples;
    const double t_end = cfg.t_end_fs();

    CsvTable table;
    if (variant == Fig2Variant::a) {
        params.delta = 0.0;
        SystemParams weak = params;
        weak.xi = 5.0;
        SystemParams strong = params;
        strong.xi = 10.0;
        table.header = {"t_over_gamma_inv", "phi_xi5_rad", "phi_xi10_rad"};
        for (std::size_t r = 0; r < n; ++r) {
            const double t = static_cast<double>(r) / static_cast<double>(n - 1) * t_end;
            append_row(table, {fs_to_gamma_time(t, params.gamma), phase_phi(weak, alpha, t),
                               phase_phi(strong, alpha, t)});
        }
        return table;
    }
    params.delta = variant == Fig2Variant::b ? 0.5 : 1.0;
    params.xi = 10.0;
    table.header = {"t_over_gamma_inv", "phi_rad"};
    for (std::size_t r = 0; r < n; ++r) {
        const double t = static_cast<double>(r) / static_cast<double>(n - 1) * t_end;
        append_row(table, {fs_to_gamma_time(t, params.gamma), phase_phi(params, alpha, t)});
    }
    return table;
}

CsvTable run_coeffs(const ScenarioConfig& cfg) {
    const SystemParams& p = cfg.system;
    const std::size_t n = cfg.run.samples;
    const double t_end = cfg.t_end_fs();

    CsvTable table;
    table.header = {"t_over_gamma_inv", "u_re", "u_im", "u_abs", "w_re", "w_im",
                    "a_re",             "a_im", "b_re", "b_im"};
    for (std::size_t r = 0; r < n; ++r) {
        const double t = static_cast<double>(r) / static_cast<double>(n - 1) * t_end;
        const EvolutionCoefficients ec = evaluate_coefficients(p, t);
        append_row(table, {fs_to_gamma_time(t, p.gamma), ec.u.real(), ec.u.imag(), std::abs(ec.u),
                           ec.w.real(), ec.w.imag(), ec.a_coef.real(), ec.a_coef.imag(),
                           ec.b_coef.real(), ec.b_coef.imag()});
    }
    return table;
}

CsvTable run_sweep(const ScenarioConfig& cfg, SweepAxis axis, const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("sweep: need at least one value");
    if (values.size() > 10000) throw std::invalid_argument("sweep: at most 10000 points");

    CsvTable table;
    table.header = {sweep_axis_name(axis), "tau_d_fs",      "tau_d_finite",
                    "f_norm_infinity",     "steady_mean_n", "phi_probe_rad"};
    for (double v : values) {
        SystemParams params = cfg.system;
        cplx alpha = cfg.initial.alpha;
        double dphi = cfg.initial.dphi;
        switch (axis) {
            case SweepAxis::xi: params.xi = v; break;
            case SweepAxis::delta: params.delta = v; break;
            case SweepAxis::gamma: params.gamma = v; break;
            case SweepAxis::m_coupling: params.m_coupling = v; break;
            case SweepAxis::n0:
                if (v < 0.0) throw std::invalid_argument("sweep: n0 must be >= 0");
                alpha = {std::sqrt(v), 0.0};
                break;
            case SweepAxis::dphi: dphi = v; break;
        }
        validate(params);
        const double d = 2.0 * std::abs(alpha) * std::abs(std::sin(0.5 * dphi));
        const bool finite = d > 0.0;
        const double tau_d = finite ? decoherence_time_from_distance(d, params.gamma) : 0.0;
        const double f_inf = std::exp(-0.5 * d * d);
        const double steady_n = std::norm(steady_state_w(params));
        const double probe_fs = gamma_time_to_fs(cfg.run.probe_t_over_gamma, params.gamma);
        append_row(table, {v, tau_d, finite ? 1.0 : 0.0, f_inf, steady_n,
                           phase_phi(params, alpha, probe_fs)});
    }
    return table;
}

ValidationResult run_validate(const ScenarioConfig& cfg) {
    ValidationResult result;
    const SystemParams& p = cfg.system;
    const cplx alpha = cfg.initial.alpha;

    // u against the memory-kernel solver (no bath discretization involved).
    {
        const double t_end = gamma_time_to_fs(10.0, p.gamma);
        const double dt = oracle::default_dt_fs(p, nullptr, cfg.run.dt_rule);
        const auto run = oracle::solve_volterra_u(p, t_end, dt, 201);
        oracle::Tolerances tol(cfg.run.tol_volterra);
        result.reports.push_back(
            oracle::compare_runs(oracle::closed_form_samplers(p, nullptr), run, tol));
    }

    // Every coefficient against the grid ODE system.
    const BathGrid grid(p, cfg.grid.j_count, cfg.window_mev());
    const double dt_grid = oracle::default_dt_fs(p, &grid, cfg.run.dt_rule);
    {
        const double t_end = gamma_time_to_fs(5.0, p.gamma);
        const auto run = oracle::integrate_coefficient_odes(p, grid, t_end, dt_grid, 101, true);
        oracle::Tolerances tol(cfg.run.tol_grid);
        result.reports.push_back(
            oracle::compare_runs(oracle::closed_form_samplers(p, &grid), run, tol));
    }

    // Decoherence factor against the branch-overlap product.
    {
        const double t_end = gamma_time_to_fs(2.0, p.gamma);
        const CatSpec cat = CatSpec::phase_shifted(alpha, cfg.initial.dphi);
        const auto path = oracle::oracle_decoherence_factor_path(p, grid, cat, t_end, dt_grid, 41);
        oracle::ComparisonReport rep;
        rep.method = "decoherence_overlap";
        rep.t_begin_fs = path.times_fs.front();
        rep.t_end_fs = path.times_fs.back();
        rep.dt_fs = dt_grid;
        rep.grid_j = grid.size();
        rep.grid_window_mev = grid.window_mev();
        rep.kernel_tail_fraction = grid.kernel_tail_fraction();
        oracle::ComparisonEntry entry;
        entry.name = "F";
        entry.tolerance = cfg.run.tol_decoherence;
        double peak = 0.0;
        for (std::size_t r = 0; r < path.times_fs.size(); ++r) {
            const cplx analytic = decoherence_factor(p, cat.alpha1, cat.alpha2, path.times_fs[r]);
            entry.max_abs_error =
                std::max(entry.max_abs_error, std::abs(analytic - path.factors[r]));
            peak = std::max(peak, std::abs(path.factors[r]));
        }
        entry.max_rel_error = peak > 0.0 ? entry.max_abs_error / peak : entry.max_abs_error;
        entry.pass = entry.max_abs_error <= entry.tolerance;
        rep.entries.push_back(entry);
        result.reports.push_back(std::move(rep));
    }

    // Closed-form sum rule on the grid.
    {
        oracle::ComparisonReport rep;
        rep.method = "sum_rule";
        rep.t_begin_fs = 0.0;
        rep.t_end_fs = gamma_time_to_fs(5.0, p.gamma);
        rep.grid_j = grid.size();
        rep.grid_window_mev = grid.window_mev();
        rep.kernel_tail_fraction = grid.kernel_tail_fraction();
        oracle::ComparisonEntry entry;
        entry.name = "sum_rule";
        entry.tolerance = cfg.run.tol_sum_rule * std::norm(alpha);
        for (std::size_t r = 0; r <= 20; ++r) {
            const double t = rep.t_end_fs * static_cast<double>(r) / 20.0;
            entry.max_abs_error =
                std::max(entry.max_abs_error, std::abs(sum_rule_residual(p, alpha, grid, t)));
        }
        const double scale = std::norm(alpha);
        entry.max_rel_error = scale > 0.0 ? entry.max_abs_error / scale : entry.max_abs_error;
        entry.pass = entry.max_abs_error <= entry.tolerance;
        rep.entries.push_back(entry);
        result.reports.push_back(std::move(rep));
    }

    result.summary.header = {"item", "max_abs_error", "max_rel_error", "tolerance", "pass"};
    double item = 0.0;
    result.pass = true;
    for (const auto& rep : result.reports) {
        for (const auto& e : rep.entries) {
            append_row(result.summary, {item, e.max_abs_error, e.max_rel_error, e.tolerance,
                                        e.pass ? 1.0 : 0.0});
            item += 1.0;
            result.pass = result.pass && e.pass;
        }
    }
    return result;
}

std::string validation_jsonl(const ValidationResult& result) {
    std::string out;
    for (const auto& rep : result.reports) {
        for (const auto& e : rep.entries) {
            nlohmann::json obj{{"report", rep.method},
                               {"item", e.name},
                               {"max_abs_error", e.max_abs_error},
                               {"max_rel_error", e.max_rel_error},
                               {"tolerance", e.tolerance},
                               {"pass", e.pass},
                               {"t_end_fs", rep.t_end_fs},
                               {"dt_fs", rep.dt_fs},
                               {"grid_j", rep.grid_j},
                               {"grid_window_mev", rep.grid_window_mev},
                               {"kernel_tail_fraction", rep.kernel_tail_fraction}};
            out += obj.dump();
            out += '\n';
        }
    }
    return out;
}

namespace {
const char* kCsvPreamble =
    "set datafile separator ','\n"
    "set key noenhanced\n";
}

std::string plot_script_fig1(const std::string& csv_name) {
    std::string s = kCsvPreamble;
    s += "set xlabel 't in units of 1/Gamma'\n";
    s += "set ylabel 'mean exciton number'\n";
    s += "set multiplot\n";
    s += "plot '" + csv_name + "' using 1:2 skip 1 with lines lw 2 title 'driven', \\\n";
    s += "     '" + csv_name + "' using 1:3 skip 1 with lines lw 2 dt 2 title 'undriven'\n";
    s += "set origin 0.42, 0.42\n";
    s += "set size 0.52, 0.48\n";
    s += "set xlabel 'short time'\nset ylabel ''\n";
    s += "plot '" + csv_name + "' using 4:5 skip 1 with lines notitle, \\\n";
    s += "     '" + csv_name + "' using 4:6 skip 1 with lines dt 2 notitle\n";
    s += "unset multiplot\n";
    return s;
}

std::string plot_script_fig2(const std::string& csv_name, Fig2Variant variant) {
    std::string s = kCsvPreamble;
    s += "set xlabel 't in units of 1/Gamma'\n";
    s += "set ylabel 'phase of the decoherence factor (rad)'\n";
    if (variant == Fig2Variant::a) {
        s += "plot '" + csv_name + "' using 1:2 skip 1 with lines title 'xi = 5 meV', \\\n";
        s += "     '" + csv_name + "' using 1:3 skip 1 with lines dt 2 title 'xi = 10 meV'\n";
    } else {
        s += "plot '" + csv_name + "' using 1:2 skip 1 with lines title 'phi(t)'\n";
    }
    return s;
}

std::string plot_script_coeffs(const std::string& csv_name) {
    std::string s = kCsvPreamble;
    s += "set xlabel 't in units of 1/Gamma'\n";
    s += "plot '" + csv_name + "' using 1:4 skip 1 with lines title '|u|', \\\n";
    s += "     '" + csv_name + "' using 1:5 skip 1 with lines title 'Re w', \\\n";
    s += "     '" + csv_name + "' using 1:6 skip 1 with lines title 'Im w'\n";
    return s;
}

std::string plot_script_sweep(const std::string& csv_name, SweepAxis axis) {
    std::string s = kCsvPreamble;
    s += "set xlabel '" + sweep_axis_name(axis) + "'\n";
    s += "set ylabel 'decoherence time (fs)'\n";
    s += "plot '" + csv_name + "' using 1:2 skip 1 with linespoints title 'tau_d'\n";
    return s;
}

}  // namespace excidyn::harness
