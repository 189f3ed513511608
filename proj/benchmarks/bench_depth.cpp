#include <benchmark/benchmark.h>

#include <vector>

#include "curvedepth/exact.hpp"
#include "curvedepth/monte_carlo.hpp"
#include "curvedepth/oracle.hpp"
#include "curvedepth/stabbing.hpp"

using namespace curvedepth;

namespace {

// Ring of zigzag curves around the origin plus a diameter query.
struct Scene {
    Polyline query;
    std::vector<Polyline> population;
};

Scene make_scene(int curves, int vertices) {
    CounterRng rng{2024};
    std::uint64_t ctr = 0;
    Scene s{Polyline({{-5.0, 0.1}, {5.0, -0.1}}), {}};
    for (int c = 0; c < curves; ++c) {
        std::vector<Point> vs;
        const double cx = -6.0 + 12.0 * rng.uniform(ctr++);
        const double cy = -6.0 + 12.0 * rng.uniform(ctr++);
        for (int v = 0; v < vertices; ++v) {
            vs.push_back({cx + 3.0 * rng.uniform(ctr++), cy + 3.0 * rng.uniform(ctr++)});
        }
        s.population.emplace_back(std::move(vs));
    }
    return s;
}

void BM_ExactDepth(benchmark::State& state) {
    const Scene s = make_scene(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(curve_depth(s.query, s.population).depth);
    }
}
BENCHMARK(BM_ExactDepth)->Args({2, 4})->Args({4, 5})->Args({8, 8})->Args({16, 8});

void BM_MonteCarlo(benchmark::State& state) {
    const Scene s = make_scene(4, 5);
    const McConfig cfg{static_cast<std::uint64_t>(state.range(0)), 7};
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_depth(s.query, s.population, cfg).d_hat);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MonteCarlo)->RangeMultiplier(4)->Range(1000, 64000)->Complexity();

void BM_PointDepth(benchmark::State& state) {
    const Scene s = make_scene(static_cast<int>(state.range(0)), 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(point_depth({0.3, -0.2}, s.population));
    }
}
BENCHMARK(BM_PointDepth)->Arg(4)->Arg(16)->Arg(64);

void BM_OracleCurveDepth(benchmark::State& state) {
    const Scene s = make_scene(4, 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            oracle_curve_depth(s.query, s.population, static_cast<int>(state.range(0)),
                               static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_OracleCurveDepth)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
