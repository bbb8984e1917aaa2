#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "atkde/eventlog.hpp"

namespace atkde {

struct DivideConfig {
    int window = 7;                    // moving-average window in days
    std::vector<double> sensitivity =  // ascending grid in (0, 1]
        {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    int max_clusters = 6;
    double dbscan_eps = 2.0;           // on standardized features
    std::size_t dbscan_min_samples = 1;
};

/// Inclusive 0-based day-index range within the source dataset.
struct Segment {
    std::size_t start_day = 0;
    std::size_t end_day = 0;

    std::size_t length() const { return end_day - start_day + 1; }
};

struct SegmentFeatures {
    double mean_daily = 0.0;
    double p25_daily = 0.0;
    double p75_daily = 0.0;
    double std_interarrival = 0.0;
    double p25_interarrival = 0.0;
    double p75_interarrival = 0.0;
    bool degenerate = false;  // fewer than 2 arrivals: inter-arrival stats zeroed

    std::vector<double> as_vector() const {
        return {mean_daily, p25_daily, p75_daily, std_interarrival, p25_interarrival,
                p75_interarrival};
    }
};

struct GlobalClustering {
    std::vector<std::size_t> change_points;  // 0-based day indices starting a new segment
    std::vector<Segment> segments;           // tile [0, N) in temporal order
    std::vector<int> labels;                 // per segment, 1..J by first appearance
    double chosen_z = 0.0;                   // 0 when the fallback was used
    bool fallback = false;

    int num_clusters() const;
    /// Global cluster label of a day index.
    int label_of_day(std::size_t day_index) const;
};

std::vector<long long> arrival_count_sequence(const ArrivalDataset& dataset);

/// Length |M| - w + 1; entry i is the mean of M[i..i+w).
std::vector<double> moving_average(const std::vector<long long>& counts, int window);

/// Length |MA| - w; entry i is MA[i + w] - MA[i].
std::vector<double> sliding_window_differences(const std::vector<double>& ma, int window);

/// IQR outliers of the diff series collapsed to one index per run, mapped to
/// dataset day indices (diff index i anchors the change at day i + window).
std::vector<std::size_t> detect_change_points(const std::vector<double>& diffs, double z,
                                              int window);

std::vector<Segment> cut_segments(const std::vector<std::size_t>& change_points,
                                  std::size_t num_days);

SegmentFeatures segment_features(const ArrivalDataset& dataset, const Segment& segment);

/// Collects within-day consecutive inter-arrival gaps (seconds) for the days
/// in [first, last]. Shared by segment and weekday feature computation.
std::vector<double> within_day_interarrivals(const ArrivalDataset& dataset, std::size_t first,
                                             std::size_t last);

/// DBSCAN over standardized 6-dim feature vectors; every segment is labeled
/// (min_samples = 1 leaves no noise), labels 1..J by first appearance.
std::vector<int> cluster_segments(const std::vector<SegmentFeatures>& features, double eps,
                                  std::size_t min_samples);

/// Algorithm: iterate z ascending; the first admissible solution wins
/// (min segment length >= window, >= 2 segments, < max_clusters labels) and
/// its adjacent same-label segments are merged, keeping only label-changing
/// boundaries as change points; otherwise fall back to a single all-days
/// cluster.
GlobalClustering cluster_global_segments(const ArrivalDataset& dataset,
                                         const DivideConfig& config);

}  // namespace atkde
