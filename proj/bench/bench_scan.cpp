// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include "eiszero/zeros.hpp"

using namespace eiszero;

namespace {

std::vector<double> arc_grid(int n)
{
    std::vector<double> ts;
    for (int i = 1; i < n; ++i)
        ts.push_back(kPi / 3 + (kPi / 6) * i / n);
    return ts;
}

SignFunction arc_function(const WeightPair& wp)
{
    return [wp](double t, Precision p) { return arc_real(wp, t, 1e-14, p); };
}

void BM_signs_serial(benchmark::State& state)
{
    const WeightPair wp = WeightPair::make(static_cast<int>(state.range(0)), 40);
    const auto ts = arc_grid(16 * wp.weight());
    const SignFunction f = arc_function(wp);
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate_signs_serial(f, ts));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(ts.size()));
}

void BM_signs_parallel(benchmark::State& state)
{
    const WeightPair wp = WeightPair::make(static_cast<int>(state.range(0)), 40);
    const auto ts = arc_grid(16 * wp.weight());
    const SignFunction f = arc_function(wp);
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate_signs_parallel(f, ts));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(ts.size()));
}

ScanOptions quick()
{
    ScanOptions o;
    o.hunt_interior = false;
    o.probe_orders = false;
    return o;
}

void BM_audit_range_serial(benchmark::State& state)
{
    const auto pairs = weight_grid(20, 24, 56, 56 + 2 * static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(audit_range_serial(pairs, quick()));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(pairs.size()));
}

void BM_audit_range_parallel(benchmark::State& state)
{
    const auto pairs = weight_grid(20, 24, 56, 56 + 2 * static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(audit_range_parallel(pairs, quick()));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(pairs.size()));
}

}  // namespace

BENCHMARK(BM_signs_serial)->Arg(60)->Arg(160)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_signs_parallel)->Arg(60)->Arg(160)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_audit_range_serial)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_audit_range_parallel)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
