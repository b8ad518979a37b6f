#pragma once

#include <cstddef>
#include <string>

#include "excidyn/system_params.hpp"

namespace excidyn::harness {

struct InitialConfig {
    cplx alpha{3.1622776601683795, 0.0};  // sqrt(10)
    double dphi = 3.14159265358979323846;
    cplx c1{0.7071067811865476, 0.0};
    cplx c2{0.7071067811865476, 0.0};
    bool operator==(const InitialConfig&) const = default;
};

struct GridConfig {
    std::size_t j_count = 4001;
    double w_mult = 50.0;  // window = w_mult * gamma
    bool operator==(const GridConfig&) const = default;
};

struct RunConfig {
    double t_end_over_gamma = 50.0;
    std::size_t samples = 501;
    double dt_rule = 0.01;
    double inset_t_end_over_gamma = 1.0;
    double probe_t_over_gamma = 1.0;
    double tol_volterra = 1e-6;
    double tol_grid = 5e-3;
    double tol_decoherence = 1e-3;
    double tol_sum_rule = 1e-3;  // relative to |alpha|^2
    bool operator==(const RunConfig&) const = default;
};

struct OutputConfig {
    std::string dir = ".";
    bool plot_script = true;
    bool operator==(const OutputConfig&) const = default;
};

struct ScenarioConfig {
    SystemParams system;
    InitialConfig initial;
    GridConfig grid;
    RunConfig run;
    OutputConfig output;
    bool operator==(const ScenarioConfig&) const = default;

    double window_mev() const { return grid.w_mult * system.gamma; }
    double t_end_fs() const;
    double probe_t_fs() const;
};

// Weak-damping defaults (the population-dynamics scenario).
ScenarioConfig default_config();
// Strong-damping defaults used by the phase-control scenario.
ScenarioConfig fig2_base_config();

// Line-oriented `[section]` / `key = value` text. Unknown sections or keys
// are rejected with the offending line number; invariant violations are
// caught here, never mid-run. Empty input yields default_config().
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config_file(const std::string& path);

// Canonical form: fixed section and key order, shortest round-trip numbers.
// parse_config(serialize_config(c)) == c.
std::string serialize_config(const ScenarioConfig& cfg);

}  // namespace excidyn::harness
