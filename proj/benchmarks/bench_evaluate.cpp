#include <benchmark/benchmark.h>

#include <pfaffcount/pfaffian.hpp>

using namespace pfaffcount;

static void BM_EvaluateExpexp(benchmark::State& state)
{
    const PfaffianFunction f = chain_function(chains::expexp(), 2);
    const Rational x = parse_rational("7/11");
    const auto prec = static_cast<Precision>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate(f, x, prec));
    }
}
BENCHMARK(BM_EvaluateExpexp)->RangeMultiplier(4)->Range(64, 4096);

static void BM_DerivativeDegreeGrowth(benchmark::State& state)
{
    const PfaffianFunction f = chain_function(chains::inverse_one_plus_square(), 1);
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(derivative(f, k));
    }
}
BENCHMARK(BM_DerivativeDegreeGrowth)->DenseRange(2, 10, 4);

BENCHMARK_MAIN();
