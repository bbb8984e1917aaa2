// Micro-benchmarks for the hot paths: KDE fit/sample, hourly-distance
// evaluation, and the end-to-end fit on a synthetic workload.

#include <benchmark/benchmark.h>

#include "atkde/evaluate.hpp"
#include "atkde/kde.hpp"
#include "atkde/pipeline.hpp"
#include "atkde/rng.hpp"

namespace {

using namespace atkde;

std::vector<double> gap_samples(std::size_t n) {
    Rng rng(7);
    std::vector<double> out(n);
    for (auto& v : out) v = 300.0 + 60.0 * rng.normal();
    return out;
}

ArrivalDataset synthetic_dataset(std::size_t days, std::size_t per_day) {
    Rng rng(11);
    std::vector<Micros> arrivals;
    const CivilDay start = days_from_civil(2024, 1, 1);
    for (std::size_t d = 0; d < days; ++d) {
        Micros base = instant_at(start + static_cast<CivilDay>(d), 8 * kMicrosPerHour);
        Micros t = base;
        for (std::size_t i = 0; i < per_day; ++i) {
            t += static_cast<Micros>((300.0 + 120.0 * rng.uniform()) * kMicrosPerSecond);
            arrivals.push_back(t);
        }
    }
    return dataset_from_arrivals(arrivals);
}

void BM_KdeFit(benchmark::State& state) {
    auto samples = gap_samples(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        KdeModel model{samples, silverman_bandwidth(samples)};
        benchmark::DoNotOptimize(model.bandwidth);
    }
}
BENCHMARK(BM_KdeFit)->Arg(100)->Arg(1000)->Arg(10000);

void BM_KdeSample(benchmark::State& state) {
    auto samples = gap_samples(1000);
    KdeModel model{samples, silverman_bandwidth(samples)};
    Rng rng(3);
    for (auto _ : state) benchmark::DoNotOptimize(model.sample(rng));
}
BENCHMARK(BM_KdeSample);

void BM_HourlyDistance(benchmark::State& state) {
    auto dataset = synthetic_dataset(60, static_cast<std::size_t>(state.range(0)));
    auto a = dataset.flatten();
    auto b = a;
    for (auto& t : b) t += 30 * 60 * kMicrosPerSecond;
    for (auto _ : state) benchmark::DoNotOptimize(compute_cadd(a, b).sqrt_cadd);
}
BENCHMARK(BM_HourlyDistance)->Arg(20)->Arg(100);

void BM_FitPipeline(benchmark::State& state) {
    auto dataset = synthetic_dataset(static_cast<std::size_t>(state.range(0)), 30);
    AtkdeParams params;
    params.search.factor_grid = {1.0};  // skip the grid search; measure structure + KDE
    for (auto _ : state) {
        auto model = fit_atkde(dataset, params);
        benchmark::DoNotOptimize(model.ensemble.models.size());
    }
}
BENCHMARK(BM_FitPipeline)->Arg(60)->Arg(180)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
