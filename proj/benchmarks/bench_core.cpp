#include <benchmark/benchmark.h>

#include <cmath>

#include "excidyn/bath_grid.hpp"
#include "excidyn/coefficients.hpp"
#include "excidyn/observables.hpp"
#include "excidyn/oracle.hpp"
#include "excidyn/units.hpp"

using namespace excidyn;

namespace {

SystemParams bench_params() {
    SystemParams p;
    p.gamma = 20.0;
    p.m_coupling = 20.0;
    p.xi = 10.0;
    p.delta = 0.5;
    return p;
}

void BM_CoeffU(benchmark::State& state) {
    const SystemParams p = bench_params();
    double t = 0.0;
    for (auto _ : state) {
        t += 0.37;
        benchmark::DoNotOptimize(coeff_u(p, t));
    }
}
BENCHMARK(BM_CoeffU);

void BM_CoeffW(benchmark::State& state) {
    const SystemParams p = bench_params();
    double t = 0.0;
    for (auto _ : state) {
        t += 0.37;
        benchmark::DoNotOptimize(coeff_w(p, t));
    }
}
BENCHMARK(BM_CoeffW);

void BM_CoeffVj(benchmark::State& state) {
    const SystemParams p = bench_params();
    double t = 0.0;
    for (auto _ : state) {
        t += 0.37;
        benchmark::DoNotOptimize(coeff_vj(p, p.omega0 + 3.0, 0.4, t));
    }
}
BENCHMARK(BM_CoeffVj);

void BM_DecoherenceFactor(benchmark::State& state) {
    const SystemParams p = bench_params();
    const cplx a{std::sqrt(10.0), 0.0};
    double t = 0.0;
    for (auto _ : state) {
        t += 0.37;
        benchmark::DoNotOptimize(decoherence_factor(p, a, -a, t));
    }
}
BENCHMARK(BM_DecoherenceFactor);

void BM_BuildBathGrid(benchmark::State& state) {
    const SystemParams p = bench_params();
    const auto j = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(BathGrid(p, j, 50.0 * p.gamma));
    }
}
BENCHMARK(BM_BuildBathGrid)->Arg(101)->Arg(1001)->Arg(4001);

void BM_SumRuleResidual(benchmark::State& state) {
    const SystemParams p = bench_params();
    const BathGrid grid(p, static_cast<std::size_t>(state.range(0)), 50.0 * p.gamma);
    const cplx a{std::sqrt(10.0), 0.0};
    const double t = gamma_time_to_fs(2.0, p.gamma);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sum_rule_residual(p, a, grid, t));
    }
}
BENCHMARK(BM_SumRuleResidual)->Arg(1001)->Arg(4001);

void BM_ModeIntegration(benchmark::State& state) {
    const SystemParams p = bench_params();
    const BathGrid grid(p, static_cast<std::size_t>(state.range(0)), 20.0 * p.gamma);
    const double dt = oracle::default_dt_fs(p, &grid);
    const double t_end = gamma_time_to_fs(0.5, p.gamma);
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle::integrate_mode_equations(
            p, grid, oracle::ModeKind::coefficient_w, t_end, dt, 2, false));
    }
}
BENCHMARK(BM_ModeIntegration)->Arg(101)->Arg(1001)->Unit(benchmark::kMillisecond);

void BM_VolterraU(benchmark::State& state) {
    const SystemParams p = bench_params();
    const double dt = oracle::default_dt_fs(p, nullptr);
    const double t_end = gamma_time_to_fs(10.0, p.gamma);
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle::solve_volterra_u(p, t_end, dt, 2));
    }
}
BENCHMARK(BM_VolterraU)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
