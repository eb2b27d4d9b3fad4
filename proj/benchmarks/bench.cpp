#include <benchmark/benchmark.h>

#include "burgers/circle.hpp"
#include "burgers/envelope.hpp"
#include "burgers/ergodic.hpp"
#include "burgers/pullback.hpp"

using namespace burgers;

namespace {

PointField field_with(std::int64_t n_points) {
    const double horizon = static_cast<double>(n_points);
    return sample(IntensityMeasure::uniform_line(-2.0, 2.0, 1.0), 0.0, horizon,
                  42);
}

void BM_BuildTable(benchmark::State& state) {
    const auto field = field_with(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(build_table(field, Potential::zero(), 0.0));
    state.SetComplexityN(static_cast<std::int64_t>(field.points.size()));
}
BENCHMARK(BM_BuildTable)->Range(32, 1024)->Complexity(benchmark::oNSquared);

void BM_EnvelopeSweep(benchmark::State& state) {
    const auto field = field_with(state.range(0));
    const double t1 = static_cast<double>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            evolve(field, Potential::zero(), 0.0, t1, -8.0, 8.0));
    state.SetComplexityN(static_cast<std::int64_t>(field.points.size()));
}
BENCHMARK(BM_EnvelopeSweep)->Range(32, 1024)->Complexity();

void BM_Pullback(benchmark::State& state) {
    const auto m = IntensityMeasure::uniform_line(-1.0, 1.0, 1.0);
    const std::vector<double> schedule{4.0, 8.0, 16.0, 32.0, 64.0};
    std::uint64_t seed = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(pullback_solution(seed++, m, 2.0, schedule));
}
BENCHMARK(BM_Pullback);

void BM_ConstrainedOptimum(benchmark::State& state) {
    const double t = static_cast<double>(state.range(0));
    const auto field =
        sample(IntensityMeasure::uniform_line(-1.0, 1.0, 1.0), 0.0, t, 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(constrained_optimum(field, 4.0, 0.0, t));
}
BENCHMARK(BM_ConstrainedOptimum)->Range(64, 512);

void BM_AnchorChain(benchmark::State& state) {
    const auto field = sample(IntensityMeasure::uniform_circle(2.0), 0.0,
                              static_cast<double>(state.range(0)), 5,
                              Topology::cylinder);
    for (auto _ : state) benchmark::DoNotOptimize(build_chain(field, 3));
}
BENCHMARK(BM_AnchorChain)->Range(512, 4096);

}  // namespace

BENCHMARK_MAIN();
