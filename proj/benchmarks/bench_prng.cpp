// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "dpccm/config.hpp"
#include "dpccm/fips.hpp"
#include "dpccm/nist.hpp"
#include "dpccm/prng.hpp"

namespace {

dpccm::PrngConfig config(dpccm::Design design, std::size_t pairs, std::size_t samples) {
    dpccm::GeneratorSettings s;
    s.design = design;
    s.pair_count = pairs;
    s.samples_per_pair = samples;
    return dpccm::resolve(s).config;
}

void BM_MapEval(benchmark::State& state) {
    const auto tent = dpccm::MapConfig::tent();
    double x = 0.444;
    for (auto _ : state) {
        x = dpccm::map_eval(tent, x, 1.2);
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_MapEval);

void BM_Stream(benchmark::State& state) {
    const auto design = state.range(0) == 1 ? dpccm::Design::I : dpccm::Design::II;
    const auto cfg = config(design, 1, 100'000);
    for (auto _ : state) benchmark::DoNotOptimize(dpccm::prng_stream(cfg, 0));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * cfg.bits_per_pair()));
    state.SetLabel("items = bits");
}
BENCHMARK(BM_Stream)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Generate(benchmark::State& state) {
    const auto cfg = config(dpccm::Design::I, 8, 50'000);
    const auto threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(dpccm::prng_generate(cfg, threads));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * cfg.total_bits()));
}
BENCHMARK(BM_Generate)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_NistBattery(benchmark::State& state) {
    const auto bits = dpccm::prng_stream(config(dpccm::Design::I, 1, 1'000'000), 0).unpack();
    for (auto _ : state) benchmark::DoNotOptimize(dpccm::nist::run_battery(bits));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * bits.size()));
}
BENCHMARK(BM_NistBattery)->Unit(benchmark::kMillisecond);

void BM_FipsSuite(benchmark::State& state) {
    const auto stream = dpccm::prng_generate(config(dpccm::Design::I, 1, 1'000'000));
    for (auto _ : state) benchmark::DoNotOptimize(dpccm::fips::run_suite(stream));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * stream.size()));
}
BENCHMARK(BM_FipsSuite)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
