#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "atkde/time.hpp"

namespace atkde {

struct HourHistogram {
    Micros origin = 0;
    std::vector<double> counts;  // index = floor((t - origin) / 1h)

    double total() const;
};

/// Throws EvalError when an arrival precedes the origin.
HourHistogram hourly_histogram(std::span<const Micros> arrivals, Micros origin);

/// 1-Wasserstein distance between the unit-mass-normalized histograms over
/// their shared hour-index axis (sum of |CDF_a - CDF_b|). Units: hours.
/// Throws EvalError when either histogram is empty.
double emd_1d(const HourHistogram& a, const HourHistogram& b);

struct CaddReport {
    double cadd = 0.0;
    double sqrt_cadd = 0.0;
    std::size_t test_count = 0;
    std::size_t sim_count = 0;
};

/// CADD with a shared origin at the earliest arrival across both sets.
/// Throws EvalError naming the empty side.
CaddReport compute_cadd(std::span<const Micros> test, std::span<const Micros> simulated);

struct BenchmarkModelSpec {
    std::string name;
    std::function<void()> fit;  // may be a no-op when fitted eagerly
    std::function<std::vector<Micros>(std::uint64_t seed)> generate;
};

struct BenchmarkRow {
    std::string name;
    double mean_sqrt_cadd = 0.0;
    double std_sqrt_cadd = 0.0;
    double fit_seconds = 0.0;
    double gen_seconds = 0.0;  // mean per run
    std::vector<double> run_scores;
    std::string error;  // non-empty when the model failed

    bool failed() const { return !error.empty(); }
};

/// Fits each model once, generates `runs` times with seeds
/// base_seed..base_seed+runs-1, and scores sqrt(CADD) against the test
/// arrivals. A model failure is recorded in its row; other models proceed.
std::vector<BenchmarkRow> benchmark_run(std::span<const Micros> test,
                                        const std::vector<BenchmarkModelSpec>& models, int runs,
                                        std::uint64_t base_seed);

}  // namespace atkde
