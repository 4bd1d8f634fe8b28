#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "aucpower/binormal.hpp"
#include "aucpower/delong.hpp"
#include "aucpower/pilot.hpp"
#include "aucpower/roc.hpp"
#include "aucpower/sample_size.hpp"

namespace {

using namespace aucpower;

PairedSample make_sample(std::size_t n, std::uint64_t seed = 1) {
    BinormalSpec spec;
    spec.mu_case_a = 0.6;
    spec.mu_case_b = 0.5;
    spec.mu_ctrl_a = spec.mu_ctrl_b = 0.3;
    spec.phi = 0.3;
    Rng rng(seed);
    PairedSample s;
    sample_dataset(reparameterize(spec), n, rng, s);
    return s;
}

void BM_EstimateAuroc(benchmark::State& state) {
    const auto s = make_sample(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(estimate_auroc(s.labels, s.scores_a));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EstimateAuroc)->RangeMultiplier(4)->Range(256, 1 << 20)->Complexity(benchmark::oNLogN);

void BM_DelongFast(benchmark::State& state) {
    const auto s = make_sample(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(delong_test_fast(s.labels, s.scores_a, s.scores_b));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DelongFast)->RangeMultiplier(4)->Range(256, 1 << 20)->Complexity(benchmark::oNLogN);

void BM_DelongQuadratic(benchmark::State& state) {
    const auto s = make_sample(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(delong_test(s.labels, s.scores_a, s.scores_b));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DelongQuadratic)->RangeMultiplier(4)->Range(256, 1 << 14)->Complexity(benchmark::oNSquared);

void BM_DelongWorkspace(benchmark::State& state) {
    const auto s = make_sample(static_cast<std::size_t>(state.range(0)));
    DelongWorkspace ws;
    for (auto _ : state) benchmark::DoNotOptimize(ws.compare(s.labels, s.scores_a, s.scores_b));
}
BENCHMARK(BM_DelongWorkspace)->Arg(200)->Arg(1000)->Arg(5000);

void BM_SampleSizeSingle(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(sample_size_single({0.81, 0.2, 0.1}));
}
BENCHMARK(BM_SampleSizeSingle);

// One Monte Carlo power estimate; items are simulated validation sets.
void BM_PowerPilot(benchmark::State& state) {
    const auto s = make_sample(1000, 2);
    const PilotDataset pilot{s.labels, s.scores_a, s.scores_b};
    McConfig cfg;
    cfg.iterations = 500;
    cfg.threads = static_cast<unsigned>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(power_pilot(pilot, static_cast<std::size_t>(state.range(0)), cfg));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.iterations));
}
BENCHMARK(BM_PowerPilot)->Args({200, 1})->Args({800, 1})->Args({800, 0})->Unit(benchmark::kMillisecond);

void BM_PowerBinormal(benchmark::State& state) {
    BinormalSpec spec;
    spec.mu_case_a = 0.44;
    spec.mu_case_b = 0.41;
    spec.mu_ctrl_a = spec.mu_ctrl_b = 0.17;
    McConfig cfg;
    cfg.iterations = 500;
    for (auto _ : state) {
        benchmark::DoNotOptimize(power_binormal(spec, static_cast<std::size_t>(state.range(0)), cfg));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.iterations));
}
BENCHMARK(BM_PowerBinormal)->Arg(770)->Unit(benchmark::kMillisecond);

void BM_DensityContours(benchmark::State& state) {
    BinormalSpec spec;
    spec.mu_case_a = 0.44;
    spec.mu_case_b = 0.41;
    spec.mu_ctrl_a = spec.mu_ctrl_b = 0.17;
    for (auto _ : state) {
        benchmark::DoNotOptimize(density_contours(spec, kCase, static_cast<std::size_t>(state.range(0))));
    }
}
BENCHMARK(BM_DensityContours)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
