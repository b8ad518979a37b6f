#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "excidyn/config.hpp"
#include "excidyn/scenario.hpp"

namespace {

using namespace excidyn;
using namespace excidyn::harness;

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::optional<std::size_t> grid_j;
    std::optional<double> grid_w_mult;
    std::optional<double> dt_rule;
};

void add_common(CLI::App* sub, CommonOpts& opts) {
    sub->add_option("--config", opts.config_path, "scenario config file ([section] key = value)");
    sub->add_option("--out", opts.out_dir, "output directory (default: config output.dir)");
    sub->add_option("--grid-j", opts.grid_j, "override bath grid mode count (odd, >= 101)");
    sub->add_option("--grid-w-mult", opts.grid_w_mult, "override bath window in units of gamma");
    sub->add_option("--dt-rule", opts.dt_rule, "override integrator step rule (default 0.01)");
}

ScenarioConfig resolve_config(const CommonOpts& opts, bool fig2_defaults) {
    ScenarioConfig cfg =
        opts.config_path.empty()
            ? (fig2_defaults ? fig2_base_config() : default_config())
            : load_config_file(opts.config_path);
    if (opts.grid_j) cfg.grid.j_count = *opts.grid_j;
    if (opts.grid_w_mult) cfg.grid.w_mult = *opts.grid_w_mult;
    if (opts.dt_rule) cfg.run.dt_rule = *opts.dt_rule;
    if (!opts.out_dir.empty()) cfg.output.dir = opts.out_dir;
    // Re-validate after overrides; round-tripping through the parser keeps a
    // single validation path.
    cfg = parse_config(serialize_config(cfg));
    for (const auto& warning : validate(cfg.system)) {
        std::cerr << "warning: " << warning << "\n";
    }
    return cfg;
}

std::string out_path(const ScenarioConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.output.dir);
    return (std::filesystem::path(cfg.output.dir) / name).string();
}

void write_outputs(const ScenarioConfig& cfg, const CsvTable& table, const std::string& stem,
                   const std::string& plot) {
    const std::string csv_path = out_path(cfg, stem + ".csv");
    emit_csv(table, csv_path);
    std::cout << "wrote " << csv_path << "\n";
    if (cfg.output.plot_script) {
        const std::string gp_path = out_path(cfg, stem + ".gp");
        write_text_file(gp_path, plot);
        std::cout << "wrote " << gp_path << "\n";
    }
}

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const auto comma = csv.find(',', pos);
        const std::string item = csv.substr(pos, comma == std::string::npos ? csv.size() - pos
                                                                            : comma - pos);
        if (!item.empty()) {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument("bad sweep value '" + item + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (values.empty()) throw std::invalid_argument("--values is empty");
    return values;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"excidyn: analytic dynamics and decoherence of a driven exciton in a lossy "
                 "cavity, with brute-force cross-validation"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string variant = "a";
    std::string axis = "xi";
    std::string values_csv;

    CLI::App* fig1 = app.add_subcommand("fig1", "mean exciton number vs time (driven/undriven)");
    add_common(fig1, opts);
    CLI::App* fig2 = app.add_subcommand("fig2", "decoherence-factor phase vs time");
    fig2->add_option("variant", variant, "a: delta=0, xi in {5,10}; b: delta=0.5; c: delta=1")
        ->check(CLI::IsMember({"a", "b", "c"}));
    add_common(fig2, opts);
    CLI::App* validate_cmd = app.add_subcommand("validate", "run the cross-validation battery");
    add_common(validate_cmd, opts);
    CLI::App* sweep = app.add_subcommand("sweep", "summary observables over a parameter sweep");
    sweep->add_option("--axis", axis, "xi | delta | gamma | m_coupling | n0 | dphi")->required();
    sweep->add_option("--values", values_csv, "comma-separated axis values")->required();
    add_common(sweep, opts);
    CLI::App* coeffs = app.add_subcommand("coeffs", "dump raw u, w, A, B coefficient paths");
    add_common(coeffs, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (fig1->parsed()) {
            const ScenarioConfig cfg = resolve_config(opts, false);
            write_outputs(cfg, run_fig1(cfg), "fig1", plot_script_fig1("fig1.csv"));
        } else if (fig2->parsed()) {
            const ScenarioConfig cfg = resolve_config(opts, true);
            const Fig2Variant v = parse_fig2_variant(variant);
            const std::string stem = "fig2" + variant;
            write_outputs(cfg, run_fig2(cfg, v), stem, plot_script_fig2(stem + ".csv", v));
        } else if (coeffs->parsed()) {
            const ScenarioConfig cfg = resolve_config(opts, false);
            write_outputs(cfg, run_coeffs(cfg), "coeffs", plot_script_coeffs("coeffs.csv"));
        } else if (sweep->parsed()) {
            const ScenarioConfig cfg = resolve_config(opts, false);
            const SweepAxis ax = parse_sweep_axis(axis);
            const std::string stem = "sweep_" + sweep_axis_name(ax);
            write_outputs(cfg, run_sweep(cfg, ax, parse_values(values_csv)), stem,
                          plot_script_sweep(stem + ".csv", ax));
        } else if (validate_cmd->parsed()) {
            const ScenarioConfig cfg = resolve_config(opts, false);
            const ValidationResult result = run_validate(cfg);
            emit_csv(result.summary, out_path(cfg, "validation.csv"));
            write_text_file(out_path(cfg, "validation.jsonl"), validation_jsonl(result));
            for (const auto& rep : result.reports) {
                for (const auto& e : rep.entries) {
                    std::printf("%s  %-12s (%s)  max_abs=%.3e  tol=%.3e\n",
                                e.pass ? "PASS" : "FAIL", e.name.c_str(), rep.method.c_str(),
                                e.max_abs_error, e.tolerance);
                }
            }
            std::cout << (result.pass ? "validation passed" : "validation FAILED") << "\n";
            return result.pass ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
