#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "atkde/eventlog.hpp"
#include "atkde/kde.hpp"
#include "atkde/partition.hpp"
#include "atkde/rng.hpp"

namespace atkde {

/// Global cluster label per simulated day.
struct SegmentSchedule {
    std::vector<int> day_labels;
    bool replicated_pattern = false;  // false: every day uses the most recent label
};

/// Continues the training data's (label, length) block sequence over the
/// simulation horizon when it repeats with some period (block lengths
/// matching within +/- window days); otherwise assigns the final label to
/// every day.
SegmentSchedule estimate_segment_schedule(std::size_t num_days, const std::vector<int>& labels,
                                          const std::vector<std::size_t>& segment_lengths,
                                          int window);

struct GenerationConfig {
    CivilDay start_date = 0;
    std::optional<std::int64_t> horizon_days;  // exactly this many days
    std::optional<std::int64_t> num_cases;     // generate days until this many arrivals
    std::uint64_t seed = 1;
};

struct GeneratedArrivals {
    std::vector<DayArrivals> days;

    std::size_t num_arrivals() const;
    std::vector<Micros> flatten() const;
};

/// Everything generation needs besides the config; extracted from a fitted
/// model.
struct GenerationContext {
    std::vector<int> labels;                  // per training segment
    std::vector<std::size_t> segment_lengths; // days per training segment
    int window = 7;
    WeekdayClusterMap weekdays;
    BinGrid grid;
    ModelEnsemble ensemble;
    double mean_daily_arrivals = 0.0;  // training mean, for case-count horizon guard
};

/// One simulated day: per bin, a cursor walks from the bin start by sampled
/// inter-arrivals; every cursor position strictly inside the bin is emitted.
/// Zero-length steps are advanced by one microsecond. NoData weekdays and
/// absent cells produce no arrivals.
std::vector<Micros> generate_day(CivilDay date, int global_label, int weekday_cluster,
                                 const BinGrid& grid, const ModelEnsemble& ensemble, Rng& rng);

/// Algorithm driver: day-count horizons emit exactly that many days;
/// case-count horizons emit days until the target is reached, then truncate
/// to exactly the target. Per-day RNG substreams derive from (seed, day).
GeneratedArrivals generate_arrivals(const GenerationConfig& config,
                                    const GenerationContext& context);

}  // namespace atkde
