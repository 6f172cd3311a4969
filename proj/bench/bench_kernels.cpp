// Parallel kernels against the serial reference implementations on 512x512.

#include <benchmark/benchmark.h>

#include <random>

#include "mriprep/preprocess.hpp"
#include "mriprep/quality.hpp"
#include "mriprep/reference/reference.hpp"

namespace {

using namespace mriprep;

const GrayImage& scan() {
    static const GrayImage img = [] {
        std::mt19937_64 rng(512);
        std::uniform_int_distribution<int> u(0, 255);
        GrayImage g(512, 512);
        for (auto& v : g.pixels()) v = static_cast<std::uint8_t>(u(rng));
        return g;
    }();
    return img;
}

const GrayImage& scan_noisy() {
    static const GrayImage img = [] {
        GrayImage g = scan();
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<int> d(-12, 12);
        for (auto& v : g.pixels()) v = static_cast<std::uint8_t>(std::clamp(v + d(rng), 0, 255));
        return g;
    }();
    return img;
}

void BM_Median(benchmark::State& st) {
    const int k = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(median_filter(scan(), k));
}
void BM_MedianReference(benchmark::State& st) {
    const int k = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(reference::median_filter(scan(), k));
}

void BM_Opening(benchmark::State& st) {
    const int se = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(morphological_opening(scan(), se));
}
void BM_OpeningReference(benchmark::State& st) {
    const int se = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(reference::opening(scan(), se));
}

void BM_Clahe(benchmark::State& st) {
    const PipelineConfig cfg;
    for (auto _ : st) benchmark::DoNotOptimize(clahe(scan(), cfg));
}
void BM_ClaheReference(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(reference::clahe(scan(), 8, 8, 2.0));
}

void BM_Ssim(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(ssim(scan(), scan_noisy()));
}
void BM_SsimReference(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(reference::ssim(scan(), scan_noisy()));
}

void BM_Pipeline(benchmark::State& st) {
    const PipelineConfig cfg;
    for (auto _ : st) benchmark::DoNotOptimize(run_pipeline(scan(), cfg));
}

}  // namespace

BENCHMARK(BM_Median)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MedianReference)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Opening)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OpeningReference)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Clahe)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClaheReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Ssim)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SsimReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Pipeline)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
