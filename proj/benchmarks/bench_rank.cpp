#include <benchmark/benchmark.h>

#include <random>

#include <pfaffcount/cover.hpp>

using namespace pfaffcount;

static void BM_ExactRank(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(-50, 50);
    std::uniform_int_distribution<int> den(1, 30);
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
    for (auto& row : rows) {
        for (auto& v : row) {
            v = make_rational(num(rng), den(rng));
        }
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(exact_rank(rows));
    }
}
BENCHMARK(BM_ExactRank)->DenseRange(4, 16, 4);

static void BM_BlockCoverArc(benchmark::State& state)
{
    const Integer H(state.range(0));
    std::vector<RationalPoint> points;
    for (long c = 1; c <= state.range(0); ++c) {
        for (long a = 0; a < c; ++a) {
            const long b2 = c * c - a * a;
            long b = 0;
            while ((b + 1) * (b + 1) <= b2) {
                ++b;
            }
            if (b * b == b2 && a <= b) {
                for (long s : {-1L, 1L}) {
                    const RationalPoint p{make_rational(s * a, c), make_rational(b, c)};
                    if (point_height(p) == c) {
                        points.push_back(p);
                    }
                }
            }
        }
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    const MonomialSet M = box_set(2, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(block_cover(points, M, H));
    }
    state.counters["points"] = static_cast<double>(points.size());
}
BENCHMARK(BM_BlockCoverArc)->Arg(100)->Arg(500);

BENCHMARK_MAIN();
