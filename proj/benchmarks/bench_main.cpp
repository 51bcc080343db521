#include <benchmark/benchmark.h>

#include <string>

#include "lfwa/dataio.hpp"
#include "lfwa/feature_select.hpp"
#include "lfwa/fractal_dim.hpp"
#include "lfwa/knn.hpp"
#include "lfwa/optimizer.hpp"

namespace {

const lfwa::Dataset& segment() {
    static const lfwa::Dataset data = [] {
        lfwa::DatasetSpec spec;
        spec.paths = {std::string(LFWA_DATA_DIR) + "/segment.csv"};
        spec.label_column = lfwa::LabelColumn::last();
        return lfwa::min_max_normalize(lfwa::load_dataset(spec)).data;
    }();
    return data;
}

void BM_BoxLogSum(benchmark::State& state) {
    const double r = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(lfwa::box_log_sum(segment().features, r));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(segment().rows()));
}
BENCHMARK(BM_BoxLogSum)->Arg(2)->Arg(16)->Arg(1024);

void BM_EstimateFd(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(lfwa::estimate_fd(segment().features));
}
BENCHMARK(BM_EstimateFd)->Unit(benchmark::kMillisecond);

void BM_KnnPredictAll(benchmark::State& state) {
    const auto split = lfwa::normalized_split(segment(), {0.7, true, 1});
    const auto k = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(lfwa::knn_predict_all(split.train, split.test.features, k));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(split.test.rows()));
}
BENCHMARK(BM_KnnPredictAll)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_SubsetFitness(benchmark::State& state) {
    const auto split = lfwa::normalized_split(segment(), {0.7, true, 1});
    const std::vector<std::size_t> picked{2, 11, 13};
    const auto mask = lfwa::FeatureMask::from_indices(segment().dims(), picked);
    const lfwa::ClassifierConfig classifier;
    for (auto _ : state) benchmark::DoNotOptimize(lfwa::subset_fitness(mask, split.train, split.test, classifier));
}
BENCHMARK(BM_SubsetFitness)->Unit(benchmark::kMillisecond);

void BM_OptimizeSphere(benchmark::State& state) {
    const auto dim = static_cast<std::size_t>(state.range(0));
    const auto bounds = lfwa::SearchBounds::unit(dim);
    auto sphere = [](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return s;
    };
    lfwa::LfwaConfig config;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        config.rng_seed = ++seed;
        benchmark::DoNotOptimize(lfwa::optimize(sphere, bounds, config));
    }
}
BENCHMARK(BM_OptimizeSphere)->Arg(5)->Arg(44);

}  // namespace

BENCHMARK_MAIN();
