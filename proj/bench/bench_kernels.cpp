// Serial reference vs OpenMP Monte Carlo kernel, plus the quadrature path.
//
//   fdoutage_bench --benchmark_filter=Estimate

#include "fdoutage/analytic.hpp"
#include "fdoutage/simulation.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

namespace {

using namespace fdoutage;

sim::SimConfig bench_config(benchmark::State& state)
{
    sim::SimConfig cfg;
    cfg.trials = state.range(1);
    cfg.seed = 3;
    return cfg;
}

const NetworkParams bench_params = [] {
    NetworkParams p;
    p.sigma_l2 = 1e-4;
    return p;
}();

void BM_EstimateSerial(benchmark::State& state)
{
    const auto sc = static_cast<Scenario>(state.range(0));
    const auto cfg = bench_config(state);
    for (auto _ : state) benchmark::DoNotOptimize(sim::estimate_outage_serial(bench_params, sc, 1.0, cfg).value);
    state.SetItemsProcessed(state.iterations() * cfg.trials);
}

void BM_EstimateParallel(benchmark::State& state)
{
    const auto sc = static_cast<Scenario>(state.range(0));
    const auto cfg = bench_config(state);
    state.counters["threads"] = omp_get_max_threads();
    for (auto _ : state) benchmark::DoNotOptimize(sim::estimate_outage(bench_params, sc, 1.0, cfg).value);
    state.SetItemsProcessed(state.iterations() * cfg.trials);
}

void BM_AnalyticOutage(benchmark::State& state)
{
    const auto sc = static_cast<Scenario>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(analytic::outage(sc, bench_params, 1.0).value);
}

void scenario_args(benchmark::internal::Benchmark* b)
{
    for (int sc = 0; sc < 3; ++sc) b->Args({sc, 20000});
}

}  // namespace

BENCHMARK(BM_EstimateSerial)->Apply(scenario_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EstimateParallel)->Apply(scenario_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AnalyticOutage)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
