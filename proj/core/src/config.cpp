#include "excidyn/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "excidyn/bath_grid.hpp"
#include "excidyn/units.hpp"

namespace excidyn::harness {

double ScenarioConfig::t_end_fs() const {
    return gamma_time_to_fs(run.t_end_over_gamma, system.gamma);
}

double ScenarioConfig::probe_t_fs() const {
    return gamma_time_to_fs(run.probe_t_over_gamma, system.gamma);
}

ScenarioConfig default_config() { return ScenarioConfig{}; }

ScenarioConfig fig2_base_config() {
    ScenarioConfig cfg;
    cfg.system.gamma = 20.0;
    cfg.system.m_coupling = 20.0;
    cfg.system.xi = 10.0;
    cfg.system.delta = 0.0;
    cfg.run.t_end_over_gamma = 10.0;
    return cfg;
}

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw std::invalid_argument("config line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& v, std::size_t line) {
    double out = 0.0;
    const char* first = v.data();
    const char* last = v.data() + v.size();
    const auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last) fail(line, "expected a number, got '" + v + "'");
    if (!std::isfinite(out)) fail(line, "value must be finite");
    return out;
}

std::size_t parse_count(const std::string& v, std::size_t line) {
    const double d = parse_number(v, line);
    if (d < 0.0 || d != std::floor(d)) fail(line, "expected a non-negative integer, got '" + v + "'");
    return static_cast<std::size_t>(d);
}

bool parse_bool(const std::string& v, std::size_t line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    fail(line, "expected true/false, got '" + v + "'");
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig cfg;
    std::string section;
    bool saw_n0 = false;
    bool saw_alpha = false;
    std::size_t n0_line = 0;
    double n0 = 0.0;

    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "system" && section != "initial" && section != "grid" &&
                section != "run" && section != "output") {
                fail(line_no, "unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) fail(line_no, "key '" + key + "' outside any [section]");
        if (key.empty()) fail(line_no, "empty key");

        if (section == "system") {
            if (key == "gamma_mev") cfg.system.gamma = parse_number(value, line_no);
            else if (key == "m_mev") cfg.system.m_coupling = parse_number(value, line_no);
            else if (key == "xi_mev") cfg.system.xi = parse_number(value, line_no);
            else if (key == "delta_mev") cfg.system.delta = parse_number(value, line_no);
            else if (key == "omega0_mev") cfg.system.omega0 = parse_number(value, line_no);
            else fail(line_no, "unknown key '" + key + "' in [system]");
        } else if (section == "initial") {
            if (key == "n0") {
                n0 = parse_number(value, line_no);
                if (n0 < 0.0) fail(line_no, "n0 must be >= 0");
                saw_n0 = true;
                n0_line = line_no;
            } else if (key == "alpha_re") {
                cfg.initial.alpha.real(parse_number(value, line_no));
                saw_alpha = true;
            } else if (key == "alpha_im") {
                cfg.initial.alpha.imag(parse_number(value, line_no));
                saw_alpha = true;
            } else if (key == "dphi_rad") {
                cfg.initial.dphi = parse_number(value, line_no);
            } else if (key == "c1_re") cfg.initial.c1.real(parse_number(value, line_no));
            else if (key == "c1_im") cfg.initial.c1.imag(parse_number(value, line_no));
            else if (key == "c2_re") cfg.initial.c2.real(parse_number(value, line_no));
            else if (key == "c2_im") cfg.initial.c2.imag(parse_number(value, line_no));
            else fail(line_no, "unknown key '" + key + "' in [initial]");
        } else if (section == "grid") {
            if (key == "j_count") cfg.grid.j_count = parse_count(value, line_no);
            else if (key == "w_mult") cfg.grid.w_mult = parse_number(value, line_no);
            else fail(line_no, "unknown key '" + key + "' in [grid]");
        } else if (section == "run") {
            if (key == "t_end_over_gamma") cfg.run.t_end_over_gamma = parse_number(value, line_no);
            else if (key == "samples") cfg.run.samples = parse_count(value, line_no);
            else if (key == "dt_rule") cfg.run.dt_rule = parse_number(value, line_no);
            else if (key == "inset_t_end_over_gamma")
                cfg.run.inset_t_end_over_gamma = parse_number(value, line_no);
            else if (key == "probe_t_over_gamma")
                cfg.run.probe_t_over_gamma = parse_number(value, line_no);
            else if (key == "tol_volterra") cfg.run.tol_volterra = parse_number(value, line_no);
            else if (key == "tol_grid") cfg.run.tol_grid = parse_number(value, line_no);
            else if (key == "tol_decoherence")
                cfg.run.tol_decoherence = parse_number(value, line_no);
            else if (key == "tol_sum_rule") cfg.run.tol_sum_rule = parse_number(value, line_no);
            else fail(line_no, "unknown key '" + key + "' in [run]");
        } else {  // output
            if (key == "dir") cfg.output.dir = value;
            else if (key == "plot_script") cfg.output.plot_script = parse_bool(value, line_no);
            else fail(line_no, "unknown key '" + key + "' in [output]");
        }
    }

    if (saw_n0 && saw_alpha) {
        fail(n0_line, "give either n0 or alpha_re/alpha_im, not both");
    }
    if (saw_n0) cfg.initial.alpha = {std::sqrt(n0), 0.0};

    // Fail fast: every invariant violation surfaces here, never mid-run.
    validate(cfg.system);
    BathGrid probe_grid(cfg.system, cfg.grid.j_count, cfg.window_mev());
    (void)probe_grid;
    if (cfg.run.samples < 2) throw std::invalid_argument("config: run.samples must be >= 2");
    if (!(cfg.run.t_end_over_gamma > 0.0)) {
        throw std::invalid_argument("config: run.t_end_over_gamma must be > 0");
    }
    if (!(cfg.run.dt_rule > 0.0) || cfg.run.dt_rule > 0.1) {
        throw std::invalid_argument("config: run.dt_rule must lie in (0, 0.1]");
    }
    if (!(cfg.run.inset_t_end_over_gamma > 0.0) || !(cfg.run.probe_t_over_gamma > 0.0)) {
        throw std::invalid_argument("config: inset and probe times must be > 0");
    }
    if (cfg.run.tol_volterra < 0.0 || cfg.run.tol_grid < 0.0 || cfg.run.tol_decoherence < 0.0 ||
        cfg.run.tol_sum_rule < 0.0) {
        throw std::invalid_argument("config: tolerances must be >= 0");
    }
    if (cfg.initial.c1 == cplx{0.0, 0.0} && cfg.initial.c2 == cplx{0.0, 0.0}) {
        throw std::invalid_argument("config: cat weights c1, c2 must not both vanish");
    }
    return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
    std::ostringstream out;
    out << "[system]\n";
    out << "gamma_mev = " << format_double(cfg.system.gamma) << "\n";
    out << "m_mev = " << format_double(cfg.system.m_coupling) << "\n";
    out << "xi_mev = " << format_double(cfg.system.xi) << "\n";
    out << "delta_mev = " << format_double(cfg.system.delta) << "\n";
    out << "omega0_mev = " << format_double(cfg.system.omega0) << "\n";
    out << "\n[initial]\n";
    out << "alpha_re = " << format_double(cfg.initial.alpha.real()) << "\n";
    out << "alpha_im = " << format_double(cfg.initial.alpha.imag()) << "\n";
    out << "dphi_rad = " << format_double(cfg.initial.dphi) << "\n";
    out << "c1_re = " << format_double(cfg.initial.c1.real()) << "\n";
    out << "c1_im = " << format_double(cfg.initial.c1.imag()) << "\n";
    out << "c2_re = " << format_double(cfg.initial.c2.real()) << "\n";
    out << "c2_im = " << format_double(cfg.initial.c2.imag()) << "\n";
    out << "\n[grid]\n";
    out << "j_count = " << cfg.grid.j_count << "\n";
    out << "w_mult = " << format_double(cfg.grid.w_mult) << "\n";
    out << "\n[run]\n";
    out << "t_end_over_gamma = " << format_double(cfg.run.t_end_over_gamma) << "\n";
    out << "samples = " << cfg.run.samples << "\n";
    out << "dt_rule = " << format_double(cfg.run.dt_rule) << "\n";
    out << "inset_t_end_over_gamma = " << format_double(cfg.run.inset_t_end_over_gamma) << "\n";
    out << "probe_t_over_gamma = " << format_double(cfg.run.probe_t_over_gamma) << "\n";
    out << "tol_volterra = " << format_double(cfg.run.tol_volterra) << "\n";
    out << "tol_grid = " << format_double(cfg.run.tol_grid) << "\n";
    out << "tol_decoherence = " << format_double(cfg.run.tol_decoherence) << "\n";
    out << "tol_sum_rule = " << format_double(cfg.run.tol_sum_rule) << "\n";
    out << "\n[output]\n";
    out << "dir = " << cfg.output.dir << "\n";
    out << "plot_script = " << (cfg.output.plot_script ? "true" : "false") << "\n";
    return out.str();
}

}  // namespace excidyn::harness
