#include <benchmark/benchmark.h>

#include <dircomm/baselines.hpp>
#include <dircomm/benchmark.hpp>
#include <dircomm/extraction.hpp>
#include <dircomm/sampler.hpp>

namespace {

using namespace dircomm;

Benchmark planted(std::size_t n) {
    BenchmarkSpec spec;
    spec.n0 = n - spec.n1 - spec.n2;
    spec.p2 = 25.0 / static_cast<double>(n - 1);
    return generate(spec);
}

void BM_Generate(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(planted(n));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Generate)->RangeMultiplier(2)->Range(1000, 8000)->Complexity();

// One add or remove evaluation against a half-built source community.
void BM_MoveDelta(benchmark::State &state) {
    const auto bench = planted(static_cast<std::size_t>(state.range(0)));
    const auto source = bench.truth.source();
    const std::vector<NodeId> half(source.begin(), source.begin() + source.size() / 2);
    const auto s = CommunityState::from_members(bench.graph, half);
    CriterionParams params;
    std::size_t i = 0;
    for (auto _ : state) {
        const NodeId u = source[i++ % source.size()];
        benchmark::DoNotOptimize(move_delta(s, u, s.contains(u) ? Move::remove : Move::add, params));
    }
}
BENCHMARK(BM_MoveDelta)->Arg(500)->Arg(5000);

void BM_ChainSteps(benchmark::State &state) {
    const auto bench = planted(static_cast<std::size_t>(state.range(0)));
    CriterionParams params;
    ChainConfig config;
    config.c = 0.1;
    config.max_steps = config.patience = 10000;
    for (auto _ : state) {
        config.seed++;
        benchmark::DoNotOptimize(run_chain(bench.graph, params, config));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(config.max_steps));
}
BENCHMARK(BM_ChainSteps)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_FindCommunity(benchmark::State &state) {
    const auto bench = planted(static_cast<std::size_t>(state.range(0)));
    ExtractionConfig config;
    config.restarts = 1;
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(find_community(bench.graph, config, ++seed));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FindCommunity)
    ->RangeMultiplier(2)
    ->Range(1000, 4000)
    ->Unit(benchmark::kMillisecond)
    ->Complexity();

void BM_Dmm(benchmark::State &state) {
    const auto bench = planted(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_dmm(bench.graph));
}
BENCHMARK(BM_Dmm)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
