#pragma once

#include <string>
#include <vector>

#include "excidyn/config.hpp"
#include "excidyn/csv.hpp"
#include "excidyn/oracle.hpp"

namespace excidyn::harness {

enum class Fig2Variant { a, b, c };
Fig2Variant parse_fig2_variant(const std::string& name);

enum class SweepAxis { xi, delta, gamma, m_coupling, n0, dphi };
SweepAxis parse_sweep_axis(const std::string& name);
std::string sweep_axis_name(SweepAxis axis);

// Driven and undriven mean exciton number over [0, t_end], plus a dense
// short-time segment in separate columns (same row count).
CsvTable run_fig1(const ScenarioConfig& cfg);

// Decoherence phase phi(t). Variant a: delta = 0, one column per drive
// amplitude (5 and 10 meV); b: delta = 0.5 meV; c: delta = 1 meV. Remaining
// parameters come from the config.
CsvTable run_fig2(const ScenarioConfig& cfg, Fig2Variant variant);

// Raw u, w, A, B paths from the closed forms.
CsvTable run_coeffs(const ScenarioConfig& cfg);

// One row of summary observables per axis value: decoherence time (with a
// finite flag; infinite entries are written as 0), asymptotic |F|, steady
// mean number, and the phase at the probe time.
CsvTable run_sweep(const ScenarioConfig& cfg, SweepAxis axis, const std::vector<double>& values);

struct ValidationResult {
    std::vector<oracle::ComparisonReport> reports;
    CsvTable summary;
    bool pass = false;
};

// Full cross-validation battery: Volterra u, grid-ODE coefficients,
// decoherence-factor overlap, and the sum rule, at the config tolerances.
ValidationResult run_validate(const ScenarioConfig& cfg);

// One JSON object per comparison entry.
std::string validation_jsonl(const ValidationResult& result);

// gnuplot command files referencing the CSV by relative path.
std::string plot_script_fig1(const std::string& csv_name);
std::string plot_script_fig2(const std::string& csv_name, Fig2Variant variant);
std::string plot_script_coeffs(const std::string& csv_name);
std::string plot_script_sweep(const std::string& csv_name, SweepAxis axis);

}  // namespace excidyn::harness
