#include <benchmark/benchmark.h>

#include <filesystem>

#include <pfaffcount/census.hpp>
#include <pfaffcount/io.hpp>

using namespace pfaffcount;

namespace {

CurveSpec shipped(const char* name)
{
    return io::load_curve_spec(std::filesystem::path(PFAFFCOUNT_SOURCE_DIR) / "curves" / (std::string(name) + ".json"));
}

} // namespace

static void BM_CensusMordell(benchmark::State& state)
{
    const CurveSpec spec = shipped("mordell");
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_census(spec, Integer(state.range(0)), 1));
    }
}
BENCHMARK(BM_CensusMordell)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_CensusQuintic(benchmark::State& state)
{
    const CurveSpec spec = shipped("quintic");
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_census(spec, Integer(state.range(0)), 1));
    }
}
BENCHMARK(BM_CensusQuintic)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_CensusPow2Numeric(benchmark::State& state)
{
    const CurveSpec spec = shipped("pow2_numeric");
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_census(spec, Integer(state.range(0)), 1));
    }
}
BENCHMARK(BM_CensusPow2Numeric)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
