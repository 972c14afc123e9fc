#include <benchmark/benchmark.h>

#include "ssmseg/pipeline.hpp"
#include "ssmseg/synth.hpp"

namespace {

ssmseg::SynthScript two_source_script(double total_s) {
    ssmseg::SynthScript script;
    script.seed = 7;
    script.sources.push_back({"a", {{500, 80, 1.0}, {1500, 120, 0.7}}, 4.0});
    script.sources.push_back({"b", {{3000, 150, 1.0}, {5000, 200, 0.6}}, 3.0});
    script.schedule = {{0, total_s / 2}, {1, total_s / 2}};
    return script;
}

void BM_Mfcc(benchmark::State& state) {
    auto [audio, ref] = ssmseg::render(two_source_script(60.0));
    ssmseg::MfccConfig cfg;
    for (auto _ : state)
        benchmark::DoNotOptimize(ssmseg::compute_mfcc(audio, cfg));
}
BENCHMARK(BM_Mfcc)->Unit(benchmark::kMillisecond);

void BM_BuildSsm(benchmark::State& state) {
    auto [audio, ref] = ssmseg::render(two_source_script(600.0));
    ssmseg::MfccConfig cfg;
    auto features = ssmseg::compute_mfcc(audio, cfg);
    for (auto _ : state)
        benchmark::DoNotOptimize(ssmseg::build_ssm(features, 5.0));
}
BENCHMARK(BM_BuildSsm)->Unit(benchmark::kMillisecond);

void BM_Pipeline(benchmark::State& state) {
    auto [audio, ref] = ssmseg::render(two_source_script(120.0));
    ssmseg::PipelineConfig cfg;
    for (auto _ : state)
        benchmark::DoNotOptimize(ssmseg::run_pipeline(audio, cfg));
}
BENCHMARK(BM_Pipeline)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
