#include "atkde/partition.hpp"

#include <algorithm>
#include <set>

#include "atkde/clustering.hpp"
#include "atkde/errors.hpp"
#include "atkde/stats.hpp"

namespace atkde {

int WeekdayClusterMap::num_clusters(int global_label) const {
    std::set<int> unique;
    for (int k : wtc.at(static_cast<std::size_t>(global_label - 1)))
        if (k != kNoDataCluster) unique.insert(k);
    return static_cast<int>(unique.size());
}

int BinGrid::bin_of(std::int64_t time_of_day) const {
    if (time_of_day <= lower) return 1;
    if (time_of_day >= upper) return num_bins;  // closed last bin
    auto it = std::upper_bound(boundaries.begin(), boundaries.end(), time_of_day);
    auto idx = static_cast<int>(it - boundaries.begin());
    return std::clamp(idx, 1, num_bins);
}

namespace {

/// The six segment statistics computed over one weekday's days within a
/// global cluster.
std::vector<double> weekday_features(const ArrivalDataset& dataset,
                                     const std::vector<std::size_t>& day_indices) {
    std::vector<double> daily;
    std::vector<double> gaps;
    for (std::size_t d : day_indices) {
        const auto& ts = dataset.days[d].timestamps;
        daily.push_back(static_cast<double>(ts.size()));
        for (std::size_t i = 1; i < ts.size(); ++i)
            gaps.push_back(static_cast<double>(ts[i] - ts[i - 1]) /
                           static_cast<double>(kMicrosPerSecond));
    }
    std::vector<double> f(6, 0.0);
    f[0] = mean(daily);
    f[1] = quantile_linear(daily, 0.25);
    f[2] = quantile_linear(daily, 0.75);
    if (!gaps.empty()) {
        f[3] = sample_stddev(gaps);
        f[4] = quantile_linear(gaps, 0.25);
        f[5] = quantile_linear(gaps, 0.75);
    }
    return f;
}

}  // namespace

WeekdayClusterMap cluster_weekdays(const ArrivalDataset& dataset,
                                   const GlobalClustering& globals,
                                   double silhouette_threshold) {
    WeekdayClusterMap result;
    result.wtc.resize(static_cast<std::size_t>(globals.num_clusters()));
    for (auto& row : result.wtc) row.fill(kNoDataCluster);

    for (int j = 1; j <= globals.num_clusters(); ++j) {
        // Days of this global cluster, grouped by weekday.
        std::array<std::vector<std::size_t>, 7> by_weekday;
        for (std::size_t s = 0; s < globals.segments.size(); ++s) {
            if (globals.labels[s] != j) continue;
            const auto& seg = globals.segments[s];
            for (std::size_t d = seg.start_day; d <= seg.end_day; ++d) {
                if (dataset.days[d].timestamps.empty()) continue;
                by_weekday[static_cast<std::size_t>(dataset.days[d].weekday() - 1)].push_back(d);
            }
        }

        std::vector<int> populated;  // weekdays 1..7 with arrivals, ascending
        std::vector<std::vector<double>> features;
        for (int wd = 1; wd <= 7; ++wd) {
            const auto& days = by_weekday[static_cast<std::size_t>(wd - 1)];
            if (days.empty()) continue;
            populated.push_back(wd);
            features.push_back(weekday_features(dataset, days));
        }
        if (populated.empty()) continue;  // all weekdays stay NoData

        std::vector<int> labels(populated.size(), 1);
        const std::size_t m = populated.size();
        if (m >= 3) {
            auto standardized = standardize_columns(features);
            auto merges = ward_linkage(standardized);
            double best_score = -1.0;
            for (std::size_t k = 2; k + 1 <= m; ++k) {
                auto cut = cut_dendrogram(merges, m, k);
                double score = mean_silhouette(standardized, cut);
                if (score > best_score) {
                    best_score = score;
                    labels = cut;
                }
            }
            if (best_score < silhouette_threshold) labels.assign(m, 1);
        }

        // Renumber 1..K by first appearance over ascending weekdays.
        std::map<int, int> renumber;
        auto& row = result.wtc[static_cast<std::size_t>(j - 1)];
        for (std::size_t i = 0; i < m; ++i) {
            auto [it, ins] = renumber.try_emplace(labels[i], static_cast<int>(renumber.size()) + 1);
            row[static_cast<std::size_t>(populated[i] - 1)] = it->second;
        }
    }
    return result;
}

std::pair<std::int64_t, std::int64_t> determine_bounds(const ArrivalDataset& dataset) {
    std::int64_t lower = kMicrosPerDay;
    std::int64_t upper = -1;
    for (const auto& day : dataset.days) {
        for (Micros t : day.timestamps) {
            std::int64_t tod = time_of_day(t);
            lower = std::min(lower, tod);
            upper = std::max(upper, tod);
        }
    }
    if (upper < 0) throw DataError("cannot determine bounds of an empty dataset");
    if (lower == upper) {
        constexpr std::int64_t half_hour = 30 * 60 * kMicrosPerSecond;
        lower = std::max<std::int64_t>(0, lower - half_hour);
        upper = std::min<std::int64_t>(kMicrosPerDay - 1, upper + half_hour);
    }
    return {lower, upper};
}

BinGrid make_bin_grid(std::int64_t lower, std::int64_t upper, int num_bins) {
    if (num_bins < 1) throw ConfigError("number of intraday bins must be >= 1");
    if (lower >= upper) throw ConfigError("bin grid requires lower < upper");
    BinGrid grid;
    grid.lower = lower;
    grid.upper = upper;
    grid.num_bins = num_bins;
    grid.boundaries.reserve(static_cast<std::size_t>(num_bins) + 1);
    for (int l = 0; l <= num_bins; ++l)
        grid.boundaries.push_back(lower + (upper - lower) * l / num_bins);
    return grid;
}

TrainingPartition build_partition(const ArrivalDataset& train, const GlobalClustering& globals,
                                  const WeekdayClusterMap& weekdays, const BinGrid& grid) {
    TrainingPartition part;
    for (std::size_t s = 0; s < globals.segments.size(); ++s) {
        const int j = globals.labels[s];
        const auto& seg = globals.segments[s];
        for (std::size_t d = seg.start_day; d <= seg.end_day; ++d) {
            const auto& ts = train.days[d].timestamps;
            if (ts.empty()) continue;
            const int k = weekdays.cluster_of(j, train.days[d].weekday());

            // Per (day, bin) runs; gaps never cross bin or day boundaries.
            int current_bin = -1;
            Micros prev = 0;
            for (Micros t : ts) {
                int l = grid.bin_of(time_of_day(t));
                CellKey key{j, k, l};
                part.raw[key].push_back(t);
                if (l == current_bin) {
                    part.interarrivals[key].push_back(
                        static_cast<double>(t - prev) / static_cast<double>(kMicrosPerSecond));
                }
                current_bin = l;
                prev = t;
            }
        }
    }
    return part;
}

}  // namespace atkde
