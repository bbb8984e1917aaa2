#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <vector>

#include "atkde/divide.hpp"
#include "atkde/eventlog.hpp"

namespace atkde {

/// Weekday cluster label reserved for weekdays with no arrivals.
inline constexpr int kNoDataCluster = 0;

/// Per global cluster: mapping from weekday (Monday = 1 .. Sunday = 7) to a
/// weekday-cluster label, with empty weekdays mapped to kNoDataCluster.
struct WeekdayClusterMap {
    // wtc[j - 1][wd - 1] for global cluster label j.
    std::vector<std::array<int, 7>> wtc;

    int cluster_of(int global_label, int weekday) const {
        return wtc.at(static_cast<std::size_t>(global_label - 1))
            .at(static_cast<std::size_t>(weekday - 1));
    }
    /// Number of non-NoData clusters for a global cluster.
    int num_clusters(int global_label) const;
};

/// L equal-width clock-time bins over [lower, upper] (microseconds of day).
/// Bins are half-open except the last, which is closed.
struct BinGrid {
    std::int64_t lower = 0;
    std::int64_t upper = 0;
    int num_bins = 0;
    std::vector<std::int64_t> boundaries;  // num_bins + 1 ascending values

    /// 1-based bin index for a clock time; times outside [lower, upper] are
    /// clamped into the nearest bin.
    int bin_of(std::int64_t time_of_day) const;
};

struct CellKey {
    int global = 0;   // j
    int weekday = 0;  // k
    int bin = 0;      // l (1-based)

    auto operator<=>(const CellKey&) const = default;
};

struct TrainingPartition {
    /// Per-cell inter-arrival samples (seconds), pooled over (day, bin) runs.
    std::map<CellKey, std::vector<double>> interarrivals;
    /// Per-cell raw timestamps; their disjoint union is the training set.
    std::map<CellKey, std::vector<Micros>> raw;
};

/// Per global cluster: Ward clustering of the populated weekdays' feature
/// vectors, cut at the candidate count with the best mean silhouette
/// (1 cluster when the best score is below the threshold or fewer than 3
/// weekdays are populated); empty weekdays map to kNoDataCluster.
WeekdayClusterMap cluster_weekdays(const ArrivalDataset& dataset,
                                   const GlobalClustering& globals,
                                   double silhouette_threshold = 0.25);

/// (earliest, latest) clock time of day over all arrivals; an equal pair is
/// widened by 30 minutes each way, clamped to the day.
std::pair<std::int64_t, std::int64_t> determine_bounds(const ArrivalDataset& dataset);

BinGrid make_bin_grid(std::int64_t lower, std::int64_t upper, int num_bins);

/// Assigns every training timestamp to its (j, k, l) cell and pools
/// within-(day, bin) consecutive inter-arrival gaps per cell.
TrainingPartition build_partition(const ArrivalDataset& train, const GlobalClustering& globals,
                                  const WeekdayClusterMap& weekdays, const BinGrid& grid);

}  // namespace atkde
