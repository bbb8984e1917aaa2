#include "atkde/divide.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "atkde/clustering.hpp"
#include "atkde/errors.hpp"
#include "atkde/stats.hpp"

namespace atkde {

int GlobalClustering::num_clusters() const {
    std::set<int> unique(labels.begin(), labels.end());
    return static_cast<int>(unique.size());
}

int GlobalClustering::label_of_day(std::size_t day_index) const {
    for (std::size_t s = 0; s < segments.size(); ++s)
        if (day_index >= segments[s].start_day && day_index <= segments[s].end_day)
            return labels[s];
    throw DataError("day index outside the clustered range");
}

std::vector<long long> arrival_count_sequence(const ArrivalDataset& dataset) {
    if (dataset.days.empty()) throw DataError("empty dataset");
    std::vector<long long> counts;
    counts.reserve(dataset.days.size());
    for (const auto& day : dataset.days)
        counts.push_back(static_cast<long long>(day.timestamps.size()));
    return counts;
}

std::vector<double> moving_average(const std::vector<long long>& counts, int window) {
    const auto w = static_cast<std::size_t>(window);
    if (window < 1 || counts.size() < w)
        throw DataError("series shorter than the moving-average window");
    std::vector<double> out;
    out.reserve(counts.size() - w + 1);
    long long sum = 0;
    for (std::size_t i = 0; i < w; ++i) sum += counts[i];
    out.push_back(static_cast<double>(sum) / static_cast<double>(window));
    for (std::size_t i = w; i < counts.size(); ++i) {
        sum += counts[i] - counts[i - w];
        out.push_back(static_cast<double>(sum) / static_cast<double>(window));
    }
    return out;
}

std::vector<double> sliding_window_differences(const std::vector<double>& ma, int window) {
    const auto w = static_cast<std::size_t>(window);
    if (window < 1 || ma.size() < w + 1)
        throw DataError("series too short for sliding-window differences");
    std::vector<double> out;
    out.reserve(ma.size() - w);
    for (std::size_t i = 0; i + w < ma.size(); ++i) out.push_back(ma[i + w] - ma[i]);
    return out;
}

std::vector<std::size_t> detect_change_points(const std::vector<double>& diffs, double z,
                                              int window) {
    if (diffs.empty()) return {};
    double q1 = quantile_linear(diffs, 0.25);
    double q3 = quantile_linear(diffs, 0.75);
    double cf = 1.5 * (q3 - q1) * z;
    double lo = q1 - cf;
    double hi = q3 + cf;

    // Strictly-outside test: a constant series (IQR = 0) yields no candidates.
    std::vector<std::size_t> candidates;
    std::vector<int> side;  // -1 below the band, +1 above
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        if (diffs[i] >= lo && diffs[i] <= hi) continue;
        candidates.push_back(i);
        side.push_back(diffs[i] > hi ? 1 : -1);
    }

    // Collapse each run of candidates to its |diff| argmax. The window-day
    // moving average smears a single shift across up to window-1 neighboring
    // indices, so same-side candidate runs closer than the window describe one
    // event; opposite-side runs are distinct changes and stay separate.
    std::vector<std::size_t> result;
    std::size_t run_start = 0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        bool run_ends = c + 1 == candidates.size() ||
                        candidates[c + 1] - candidates[c] > static_cast<std::size_t>(window) ||
                        (candidates[c + 1] != candidates[c] + 1 && side[c + 1] != side[c]);
        if (run_ends) {
            std::size_t best = candidates[run_start];
            for (std::size_t k = run_start; k <= c; ++k)
                if (std::fabs(diffs[candidates[k]]) > std::fabs(diffs[best]))
                    best = candidates[k];
            result.push_back(best + static_cast<std::size_t>(window));
            run_start = c + 1;
        }
    }
    return result;
}

std::vector<Segment> cut_segments(const std::vector<std::size_t>& change_points,
                                  std::size_t num_days) {
    std::vector<std::size_t> cuts(change_points);
    std::sort(cuts.begin(), cuts.end());
    std::vector<Segment> segments;
    std::size_t start = 0;
    for (std::size_t c : cuts) {
        if (c == 0 || c >= num_days) continue;
        segments.push_back({start, c - 1});
        start = c;
    }
    segments.push_back({start, num_days - 1});
    return segments;
}

std::vector<double> within_day_interarrivals(const ArrivalDataset& dataset, std::size_t first,
                                             std::size_t last) {
    std::vector<double> gaps;
    for (std::size_t d = first; d <= last; ++d) {
        const auto& ts = dataset.days[d].timestamps;
        for (std::size_t i = 1; i < ts.size(); ++i)
            gaps.push_back(static_cast<double>(ts[i] - ts[i - 1]) /
                           static_cast<double>(kMicrosPerSecond));
    }
    return gaps;
}

SegmentFeatures segment_features(const ArrivalDataset& dataset, const Segment& segment) {
    SegmentFeatures f;
    std::vector<double> daily;
    std::size_t total = 0;
    for (std::size_t d = segment.start_day; d <= segment.end_day; ++d) {
        daily.push_back(static_cast<double>(dataset.days[d].timestamps.size()));
        total += dataset.days[d].timestamps.size();
    }
    f.mean_daily = mean(daily);
    f.p25_daily = quantile_linear(daily, 0.25);
    f.p75_daily = quantile_linear(daily, 0.75);

    std::vector<double> gaps = within_day_interarrivals(dataset, segment.start_day, segment.end_day);
    if (total < 2 || gaps.empty()) {
        f.degenerate = true;
        return f;
    }
    f.std_interarrival = sample_stddev(gaps);
    f.p25_interarrival = quantile_linear(gaps, 0.25);
    f.p75_interarrival = quantile_linear(gaps, 0.75);
    return f;
}

std::vector<int> cluster_segments(const std::vector<SegmentFeatures>& features, double eps,
                                  std::size_t min_samples) {
    std::vector<std::vector<double>> rows;
    rows.reserve(features.size());
    for (const auto& f : features) rows.push_back(f.as_vector());
    std::vector<int> raw = dbscan(standardize_columns(rows), eps, min_samples);

    // Renumber 1..J in order of first appearance.
    std::map<int, int> renumber;
    std::vector<int> labels(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        auto [it, inserted] = renumber.try_emplace(raw[i], static_cast<int>(renumber.size()) + 1);
        labels[i] = it->second;
    }
    return labels;
}

GlobalClustering cluster_global_segments(const ArrivalDataset& dataset,
                                         const DivideConfig& config) {
    if (dataset.days.empty()) throw DataError("empty dataset");
    const std::size_t n = dataset.days.size();

    auto fallback = [&] {
        GlobalClustering g;
        g.segments = {{0, n - 1}};
        g.labels = {1};
        g.fallback = true;
        return g;
    };

    const auto w = static_cast<std::size_t>(config.window);
    if (n < 2 * w + 1) return fallback();

    auto counts = arrival_count_sequence(dataset);
    auto ma = moving_average(counts, config.window);
    auto diffs = sliding_window_differences(ma, config.window);

    for (double z : config.sensitivity) {
        auto candidates = detect_change_points(diffs, z, config.window);
        auto raw_segments = cut_segments(candidates, n);

        std::vector<SegmentFeatures> features;
        features.reserve(raw_segments.size());
        for (const auto& s : raw_segments) features.push_back(segment_features(dataset, s));
        auto raw_labels = cluster_segments(features, config.dbscan_eps, config.dbscan_min_samples);

        std::size_t min_len = n;
        for (const auto& s : raw_segments) min_len = std::min(min_len, s.length());
        std::set<int> unique(raw_labels.begin(), raw_labels.end());
        if (min_len < w || raw_segments.size() < 2 ||
            unique.size() >= static_cast<std::size_t>(config.max_clusters))
            continue;

        // A boundary between two segments of the same cluster carries no
        // pattern information downstream, so such segments are merged and only
        // label-changing boundaries remain as change points.
        GlobalClustering g;
        for (std::size_t s = 0; s < raw_segments.size(); ++s) {
            if (!g.labels.empty() && g.labels.back() == raw_labels[s]) {
                g.segments.back().end_day = raw_segments[s].end_day;
                continue;
            }
            if (!g.segments.empty()) g.change_points.push_back(raw_segments[s].start_day);
            g.segments.push_back(raw_segments[s]);
            g.labels.push_back(raw_labels[s]);
        }
        g.chosen_z = z;
        return g;
    }
    return fallback();
}

}  // namespace atkde
