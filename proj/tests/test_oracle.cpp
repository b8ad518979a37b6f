#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "excidyn/bath_grid.hpp"
#include "excidyn/coefficients.hpp"
#include "excidyn/observables.hpp"
#include "excidyn/oracle.hpp"
#include "excidyn/units.hpp"
#include "test_helpers.hpp"

using namespace excidyn;
using oracle::ModeKind;
using oracle::OracleRun;
using testutil::over_gamma;

TEST_CASE("volterra: initial row, trivial kernel, closed-form agreement") {
    const SystemParams p = testutil::strong_damping();
    const double dt = oracle::default_dt_fs(p, nullptr);

    const OracleRun run = oracle::solve_volterra_u(p, over_gamma(10.0, p), dt, 101);
    CHECK(run.times_fs.front() == 0.0);
    CHECK(run.u_path.front() == cplx{1.0, 0.0});

    double max_err = 0.0;
    for (std::size_t r = 0; r < run.samples(); ++r) {
        max_err = std::max(max_err, std::abs(run.u_path[r] - coeff_u(p, run.times_fs[r])));
    }
    CHECK(max_err < 1e-6);

    SystemParams trivial = p;
    trivial.m_coupling = 0.0;
    const OracleRun flat =
        oracle::solve_volterra_u(trivial, over_gamma(5.0, trivial),
                                 oracle::default_dt_fs(trivial, nullptr), 21);
    for (const cplx& u : flat.u_path) CHECK(std::abs(u - cplx{1.0, 0.0}) < 1e-12);
}

TEST_CASE("volterra agrees with the closed form at the weak-damping point") {
    const SystemParams p = testutil::weak_damping();
    const double t = over_gamma(1.0, p);
    const OracleRun run = oracle::solve_volterra_u(p, t, oracle::default_dt_fs(p, nullptr), 11);
    CHECK(std::abs(run.u_path.back() - coeff_u(p, t)) < 1e-6);
}

TEST_CASE("integrators reject bad steps and runaway spans") {
    const SystemParams p = testutil::strong_damping();
    CHECK_THROWS_AS(oracle::solve_volterra_u(p, over_gamma(1.0, p), 1e9, 11),
                    std::invalid_argument);
    CHECK_THROWS_AS(oracle::solve_volterra_u(p, over_gamma(1.0, p), -1.0, 11),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        oracle::solve_volterra_u(p, 1e9, oracle::default_dt_fs(p, nullptr), 11),
        std::invalid_argument);
    CHECK_THROWS_AS(oracle::default_dt_fs(p, nullptr, 0.5), std::invalid_argument);
}

TEST_CASE("mode equations: initial rows and undriven triviality") {
    const SystemParams p = testutil::strong_damping();
    const BathGrid grid(p, 101, 20.0 * p.gamma);
    const double dt = oracle::default_dt_fs(p, &grid);

    const OracleRun ru = oracle::integrate_mode_equations(p, grid, ModeKind::coefficient_u,
                                                          over_gamma(0.5, p), dt, 6);
    CHECK(ru.u_path.front() == cplx{1.0, 0.0});
    for (std::size_t j = 0; j < ru.mode_count; ++j) CHECK(ru.uj_at(0, j) == cplx{0.0, 0.0});

    SystemParams quiet = p;
    quiet.xi = 0.0;
    const OracleRun rw = oracle::integrate_mode_equations(quiet, grid, ModeKind::coefficient_w,
                                                          over_gamma(0.5, p), dt, 6);
    for (std::size_t r = 0; r < rw.samples(); ++r) {
        CHECK(rw.w_path[r] == cplx{0.0, 0.0});
        for (std::size_t j = 0; j < rw.mode_count; ++j) CHECK(rw.vj_at(r, j) == cplx{0.0, 0.0});
    }
}

TEST_CASE("mode equations track the closed forms on a mid-sized grid") {
    // Grid truncation dominates the budget here; the acceptance suite pins
    // the production-grid numbers.
    const SystemParams p = testutil::strong_damping();
    const BathGrid grid(p, 1001, 30.0 * p.gamma);
    const double dt = oracle::default_dt_fs(p, &grid);
    const double t_end = over_gamma(2.0, p);

    const OracleRun ru =
        oracle::integrate_mode_equations(p, grid, ModeKind::coefficient_u, t_end, dt, 21);
    const OracleRun rw =
        oracle::integrate_mode_equations(p, grid, ModeKind::coefficient_w, t_end, dt, 21);
    const auto samplers = oracle::closed_form_samplers(p, &grid);
    // Resonant mode plus two off-resonant ones (one near the oscillation
    // sideband at detuning ~ Theta, one far out).
    const std::size_t center = grid.resonant_index();
    const std::vector<std::size_t> modes{center, center + 144, center - 400};
    const auto rep_u = oracle::compare_runs(samplers, ru, oracle::Tolerances(1e-2), modes);
    const auto rep_w = oracle::compare_runs(samplers, rw, oracle::Tolerances(1e-2), modes);
    CHECK(rep_u.pass());
    CHECK(rep_w.pass());
    CHECK(rep_u.find("u") != nullptr);
    CHECK(rep_u.find("u_j") != nullptr);
    CHECK(rep_u.find("u_j[644]") != nullptr);
    CHECK(rep_w.find("w") != nullptr);
    CHECK(rep_w.find("v_j") != nullptr);
    CHECK(rep_w.find("v_j[100]") != nullptr);
}

TEST_CASE("oracle runs are deterministic, bit for bit") {
    const SystemParams p = testutil::strong_damping();
    const double dt = oracle::default_dt_fs(p, nullptr);
    const OracleRun a = oracle::solve_volterra_u(p, over_gamma(4.0, p), dt, 33);
    const OracleRun b = oracle::solve_volterra_u(p, over_gamma(4.0, p), dt, 33);
    CHECK(a.u_path == b.u_path);
    CHECK(a.times_fs == b.times_fs);

    const BathGrid grid(p, 101, 20.0 * p.gamma);
    const double dtg = oracle::default_dt_fs(p, &grid);
    const OracleRun c =
        oracle::integrate_mode_equations(p, grid, ModeKind::coefficient_w, over_gamma(1.0, p), dtg, 5);
    const OracleRun d =
        oracle::integrate_mode_equations(p, grid, ModeKind::coefficient_w, over_gamma(1.0, p), dtg, 5);
    CHECK(c.w_path == d.w_path);
    CHECK(c.vj_path == d.vj_path);
}

TEST_CASE("grid refinement shrinks the u error monotonically") {
    const SystemParams p = testutil::strong_damping();
    const double t_end = over_gamma(2.0, p);
    double previous = 1e9;
    for (const auto& [j, wm] :
         {std::pair<std::size_t, double>{101, 20.0}, {1001, 30.0}, {4001, 50.0}}) {
        const BathGrid grid(p, j, wm * p.gamma);
        const double dt = oracle::default_dt_fs(p, &grid);
        const OracleRun run = oracle::integrate_mode_equations(
            p, grid, ModeKind::coefficient_u, t_end, dt, 21, false);
        double err = 0.0;
        for (std::size_t r = 0; r < run.samples(); ++r) {
            err = std::max(err, std::abs(run.u_path[r] - coeff_u(p, run.times_fs[r])));
        }
        CHECK(err < previous);
        previous = err;
    }
}

TEST_CASE("coefficient ODEs: initial row and internal norm conservation") {
    const SystemParams p = testutil::strong_damping();
    const BathGrid grid(p, 301, 20.0 * p.gamma);
    const double dt = oracle::default_dt_fs(p, &grid);
    const OracleRun run =
        oracle::integrate_coefficient_odes(p, grid, over_gamma(2.0, p), dt, 21);

    CHECK(run.u_path.front() == cplx{1.0, 0.0});
    CHECK(run.w_path.front() == cplx{0.0, 0.0});
    CHECK(run.a_path.front() == cplx{0.0, 0.0});
    CHECK(run.b_path.front() == cplx{0.0, 0.0});

    // The grid dynamics conserves the norm identity exactly; what is left is
    // integrator error, far below any truncation budget.
    const cplx alpha{std::sqrt(10.0), 0.0};
    for (std::size_t r = 0; r < run.samples(); ++r) {
        CHECK(std::abs(oracle::run_sum_rule_residual(run, alpha, r)) < 1e-8);
    }
}

TEST_CASE("coefficient ODEs reproduce the A and B closed forms") {
    const SystemParams p = testutil::strong_damping();
    const BathGrid grid(p, 1001, 30.0 * p.gamma);
    const double dt = oracle::default_dt_fs(p, &grid);
    const OracleRun run =
        oracle::integrate_coefficient_odes(p, grid, over_gamma(2.0, p), dt, 21, false);
    const auto rep =
        oracle::compare_runs(oracle::closed_form_samplers(p, nullptr), run, oracle::Tolerances(1e-2));
    CHECK(rep.pass());
    REQUIRE(rep.find("A") != nullptr);
    REQUIRE(rep.find("B") != nullptr);
    CHECK(rep.find("A")->max_abs_error < 1e-2);
}

namespace {

// Coarsest step that is an exact divisor of the segment length, at most 80%
// of the integrator gate: halving it then keeps the sample times fixed and
// the actual dt equal to the request.
double exact_base_dt(double t_end, std::size_t segments, double gate) {
    const double seg = t_end / static_cast<double>(segments);
    const auto m = static_cast<std::size_t>(std::ceil(seg / (0.8 * gate)));
    return seg / static_cast<double>(m);
}

double fit_slope(const std::vector<double>& dts, const std::vector<double>& errs) {
    const auto n = static_cast<double>(dts.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < dts.size(); ++k) {
        const double x = std::log(dts[k]);
        const double y = std::log(errs[k]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("step halving converges at fourth order") {
    const SystemParams p = testutil::strong_damping();

    SUBCASE("volterra") {
        const double t_end = over_gamma(3.0, p);
        const double dt0 = exact_base_dt(t_end, 30, 10.0 * oracle::default_dt_fs(p, nullptr));
        std::vector<OracleRun> runs;
        for (int k = 0; k < 4; ++k) {
            runs.push_back(oracle::solve_volterra_u(p, t_end, dt0 / std::pow(2.0, k), 31));
        }
        std::vector<double> dts, errs;
        for (int k = 0; k < 3; ++k) {
            const auto rep = oracle::compare_runs(runs[k], runs[k + 1], oracle::Tolerances(1.0));
            dts.push_back(runs[k].dt_fs);
            errs.push_back(rep.find("u")->max_abs_error);
        }
        CHECK(fit_slope(dts, errs) >= 3.5);
    }

    SUBCASE("mode equations") {
        const BathGrid grid(p, 101, 20.0 * p.gamma);
        const double t_end = over_gamma(1.0, p);
        const double dt0 = exact_base_dt(t_end, 10, 10.0 * oracle::default_dt_fs(p, &grid));
        std::vector<OracleRun> runs;
        for (int k = 0; k < 4; ++k) {
            runs.push_back(oracle::integrate_mode_equations(
                p, grid, ModeKind::coefficient_w, t_end, dt0 / std::pow(2.0, k), 11, false));
        }
        std::vector<double> dts, errs;
        for (int k = 0; k < 3; ++k) {
            const auto rep = oracle::compare_runs(runs[k], runs[k + 1], oracle::Tolerances(1.0));
            dts.push_back(runs[k].dt_fs);
            errs.push_back(rep.find("w")->max_abs_error);
        }
        CHECK(fit_slope(dts, errs) >= 3.5);
    }
}

TEST_CASE("undriven mode run and volterra agree within the truncation budget") {
    const SystemParams p = testutil::strong_damping();
    const BathGrid grid(p, 1001, 30.0 * p.gamma);
    const double t_end = over_gamma(2.0, p);
    const OracleRun modes = oracle::integrate_mode_equations(
        p, grid, ModeKind::coefficient_u, t_end, oracle::default_dt_fs(p, &grid), 21, false);
    const OracleRun volterra =
        oracle::solve_volterra_u(p, t_end, oracle::default_dt_fs(p, nullptr), 21);
    // Same sample times by construction.
    const auto rep = oracle::compare_runs(modes, volterra, oracle::Tolerances(1e-2));
    CHECK(rep.pass());
}

TEST_CASE("compare_runs plumbing") {
    const SystemParams p = testutil::strong_damping();
    const OracleRun run =
        oracle::solve_volterra_u(p, over_gamma(1.0, p), oracle::default_dt_fs(p, nullptr), 11);

    const auto same = oracle::compare_runs(run, run, oracle::Tolerances(0.0));
    CHECK(same.pass());
    CHECK(same.find("u")->max_abs_error == 0.0);

    // Zero tolerance against a genuinely different path must fail.
    oracle::AnalyticSamplers s = oracle::closed_form_samplers(p, nullptr);
    const auto strict = oracle::compare_runs(s, run, oracle::Tolerances(0.0));
    CHECK_FALSE(strict.pass());

    OracleRun shifted = run;
    for (double& t : shifted.times_fs) t += 0.5;
    CHECK_THROWS_AS(oracle::compare_runs(run, shifted, oracle::Tolerances(1.0)),
                    std::invalid_argument);
    OracleRun shorter = run;
    shorter.times_fs.pop_back();
    shorter.u_path.pop_back();
    CHECK_THROWS_AS(oracle::compare_runs(run, shorter, oracle::Tolerances(1.0)),
                    std::invalid_argument);
}

TEST_CASE("decoherence-factor oracle basics") {
    const SystemParams p = testutil::strong_damping();
    const BathGrid grid(p, 301, 20.0 * p.gamma);
    const double dt = oracle::default_dt_fs(p, &grid);
    const cplx alpha{std::sqrt(10.0), 0.0};

    // Identical branches never decohere.
    const CatSpec same = CatSpec::phase_shifted(alpha, 0.0);
    const auto path =
        oracle::oracle_decoherence_factor_path(p, grid, same, over_gamma(1.0, p), dt, 9);
    CHECK(path.factors.front() == cplx{1.0, 0.0});
    for (const cplx& f : path.factors) CHECK(std::abs(std::abs(f) - 1.0) < 1e-9);
}

TEST_CASE("decoherence-factor oracle agrees for fully complex branch labels") {
    const SystemParams p = testutil::strong_damping();
    const BathGrid grid(p, 1001, 30.0 * p.gamma);
    const double dt = oracle::default_dt_fs(p, &grid);
    CatSpec cat;
    cat.alpha1 = cplx{1.3, -2.1};
    cat.alpha2 = cplx{-0.4, 1.9};  // different radius: general off-diagonal pair
    for (double x : {0.3, 1.0}) {
        const double t = over_gamma(x, p);
        const cplx f_o = oracle::oracle_decoherence_factor(p, grid, cat, t, dt);
        const cplx f_a = decoherence_factor(p, cat.alpha1, cat.alpha2, t);
        CHECK(std::abs(f_o - f_a) < 5e-3);
    }
}

TEST_CASE("phase_phi matches the oracle phase for the pi cat") {
    const SystemParams p = testutil::strong_damping();  // detuning 0.5 meV
    const BathGrid grid(p, 1001, 30.0 * p.gamma);
    const cplx alpha{std::sqrt(10.0), 0.0};
    const CatSpec cat = CatSpec::phase_shifted(alpha, std::numbers::pi);
    const double t = over_gamma(1.0, p);
    const cplx f_oracle =
        oracle::oracle_decoherence_factor(p, grid, cat, t, oracle::default_dt_fs(p, &grid));
    const double diff =
        std::remainder(phase_phi(p, alpha, t) - std::arg(f_oracle), 2.0 * std::numbers::pi);
    CHECK(std::abs(diff) < 1e-3);
}
