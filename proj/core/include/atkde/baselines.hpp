#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "atkde/distfit.hpp"
#include "atkde/eventlog.hpp"
#include "atkde/generate.hpp"

namespace atkde {

/// Calendar component shared by the static baselines: per-weekday working
/// probability plus empirical pools of daily first/last arrival clock times.
struct CalendarAugmentation {
    std::array<double, 7> work_probability{};    // index weekday - 1
    std::vector<std::int64_t> first_tod_pool;    // microseconds of day
    std::vector<std::int64_t> last_tod_pool;
};

struct MeanModel {
    double mean_seconds = 0.0;
    CalendarAugmentation calendar;
};

struct BestDistModel {
    FittedDistribution dist;
    CalendarAugmentation calendar;
};

CalendarAugmentation fit_calendar(const ArrivalDataset& train);

/// Arithmetic mean of all within-day consecutive inter-arrival gaps.
/// Throws DataError for fewer than 2 gap samples.
MeanModel fit_mean(const ArrivalDataset& train);

/// Candidate family with the smallest KS statistic against the empirical
/// inter-arrival distribution. Throws DataError for fewer than 2 samples.
BestDistModel fit_best_distribution(const ArrivalDataset& train);

/// Per day: Bernoulli working-day draw, then first/last clock times from the
/// pools (redraw until first < last, 100 tries, then pool min/max), then the
/// first arrival at the drawn first time and cumulative samples until the
/// drawn last time is exceeded.
GeneratedArrivals generate_baseline(const MeanModel& model, const GenerationConfig& config);
GeneratedArrivals generate_baseline(const BestDistModel& model, const GenerationConfig& config);

}  // namespace atkde
