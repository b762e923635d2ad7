#include <benchmark/benchmark.h>

#include <filesystem>

#include "hrgen/hrgen.hpp"

namespace {

hrgen::Grammar fixture(const char* name) {
    return hrgen::load_grammar(std::filesystem::path(HRGEN_FIXTURE_DIR) / (std::string(name) + ".json"));
}

void BM_PreBouquet(benchmark::State& state) {
    const auto g = fixture("bouquet");
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hrgen::pre(g, n));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PreBouquet)->RangeMultiplier(2)->Range(100, 800)->Complexity(benchmark::oNSquared);

void BM_PreFig4(benchmark::State& state) {
    const auto g = fixture("fig4_cnf");
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hrgen::pre(g, n));
    }
}
BENCHMARK(BM_PreFig4)->Arg(12)->Arg(50)->Arg(200);

void BM_GenBouquet(benchmark::State& state) {
    const auto g = fixture("bouquet");
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto tables = hrgen::pre(g, n);
    hrgen::Sampler sampler(g, tables);
    hrgen::RandomSource rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sampler.gen("S", n, rng));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GenBouquet)->RangeMultiplier(2)->Range(200, 1600)->Complexity(benchmark::oNSquared);

void BM_GenFig4(benchmark::State& state) {
    const auto g = fixture("fig4_cnf");
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto tables = hrgen::pre(g, n);
    hrgen::Sampler sampler(g, tables);
    hrgen::RandomSource rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sampler.gen("A", n, rng));
    }
}
BENCHMARK(BM_GenFig4)->Arg(12)->Arg(50)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
