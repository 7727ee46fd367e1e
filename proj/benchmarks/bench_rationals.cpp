#include <benchmark/benchmark.h>

#include <pfaffcount/rational.hpp>

using namespace pfaffcount;

static void BM_EnumerateRationals(benchmark::State& state)
{
    const HeightBound h(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_rationals(h));
    }
    state.SetItemsProcessed(state.iterations() * count_rationals(h));
}
BENCHMARK(BM_EnumerateRationals)->RangeMultiplier(4)->Range(16, 1024);

static void BM_RationalsInInterval(benchmark::State& state)
{
    const HeightBound h(state.range(0));
    const Rational lo = parse_rational("1/3");
    const Rational hi = parse_rational("1/3") + parse_rational("1/1000");
    for (auto _ : state) {
        benchmark::DoNotOptimize(rationals_in_interval(lo, hi, h));
    }
}
BENCHMARK(BM_RationalsInInterval)->RangeMultiplier(10)->Range(100, 1000000);

BENCHMARK_MAIN();
