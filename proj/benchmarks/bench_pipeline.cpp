// Microbenchmarks for the hot paths: window cutting, clustering, shape
// features, the weight search, the neighbor baseline, and a small
// end-to-end detection run.
#include <benchmark/benchmark.h>

#include <cstddef>
#include <vector>

#include "mtsad/autocorr.hpp"
#include "mtsad/detector.hpp"
#include "mtsad/evaluation.hpp"
#include "mtsad/fcm.hpp"
#include "mtsad/pso.hpp"
#include "mtsad/series.hpp"
#include "mtsad/synthetic.hpp"

namespace {

mtsad::multi_series make_series(std::size_t length, std::size_t vars) {
    std::vector<double> rates;
    for (std::size_t i = 0; i < vars; ++i) {
        rates.push_back(60.0 + 15.0 * static_cast<double>(i));
    }
    return mtsad::gen_pseudo_ecg(length, rates, 7, 10.0, 0.02);
}

mtsad::subsequence_set make_windows(std::size_t length, std::size_t vars,
                                    std::size_t q, std::size_t r) {
    return mtsad::slide_windows(mtsad::zscore_normalize(make_series(length, vars)),
                                mtsad::window_spec{q, r});
}

void bm_slide_windows(benchmark::State& state) {
    const mtsad::multi_series series =
        mtsad::zscore_normalize(make_series(2000, 3));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            mtsad::slide_windows(series, mtsad::window_spec{10, 1}));
    }
}
BENCHMARK(bm_slide_windows);

void bm_fit_fcm(benchmark::State& state) {
    const mtsad::subsequence_set items = make_windows(1000, 3, 10, 1);
    const mtsad::weight_vector weights = mtsad::weight_vector::uniform(3);
    const mtsad::fcm_params params{1e-6, 100, 42};
    for (auto _ : state) {
        benchmark::DoNotOptimize(mtsad::fit_fcm(items, 2, 2.0, weights, params));
    }
}
BENCHMARK(bm_fit_fcm);

void bm_autocorrelation_features(benchmark::State& state) {
    const mtsad::subsequence_set items = make_windows(2000, 3, 16, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mtsad::autocorrelation_features(items));
    }
}
BENCHMARK(bm_autocorrelation_features);

void bm_knn_discord(benchmark::State& state) {
    const mtsad::subsequence_set items = make_windows(1500, 1, 10, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mtsad::knn_discord_scores(items));
    }
}
BENCHMARK(bm_knn_discord);

void bm_optimize_weights(benchmark::State& state) {
    const mtsad::subsequence_set items = make_windows(400, 3, 10, 5);
    const mtsad::fcm_params params{1e-6, 100, 42};
    mtsad::pso_config swarm;
    swarm.particles = 10;
    swarm.iterations = 10;
    swarm.seed = 9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            mtsad::optimize_weights(items, 2, 2.0, params, swarm));
    }
}
BENCHMARK(bm_optimize_weights);

void bm_detect(benchmark::State& state) {
    const mtsad::multi_series series = make_series(300, 2);
    mtsad::detector_config config;
    config.clusters = 2;
    config.window = {10, 2};
    config.pso.particles = 8;
    config.pso.iterations = 8;
    config.seed = 3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mtsad::detect(series, config));
    }
}
BENCHMARK(bm_detect);

} // namespace

BENCHMARK_MAIN();
