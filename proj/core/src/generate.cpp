#include "atkde/generate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "atkde/errors.hpp"

namespace atkde {

std::size_t GeneratedArrivals::num_arrivals() const {
    std::size_t n = 0;
    for (const auto& d : days) n += d.timestamps.size();
    return n;
}

std::vector<Micros> GeneratedArrivals::flatten() const {
    std::vector<Micros> out;
    out.reserve(num_arrivals());
    for (const auto& d : days) out.insert(out.end(), d.timestamps.begin(), d.timestamps.end());
    return out;
}

namespace {

/// Smallest period p (1 <= p <= B/2) such that blocks repeat with period p
/// and corresponding lengths agree within +/- window days.
std::optional<std::size_t> find_block_period(const std::vector<int>& labels,
                                             const std::vector<std::size_t>& lengths,
                                             int window) {
    const std::size_t b = labels.size();
    for (std::size_t p = 1; p <= b / 2; ++p) {
        bool match = true;
        for (std::size_t i = p; i < b && match; ++i) {
            if (labels[i] != labels[i - p]) match = false;
            auto diff = static_cast<long long>(lengths[i]) - static_cast<long long>(lengths[i - p]);
            // The final block may be truncated mid-cycle: it only must not
            // overshoot its period-mate.
            if (i == b - 1 ? diff > window : std::llabs(diff) > window) match = false;
        }
        // A period of 1 over uniform labels means "no change", not a pattern.
        if (match && p == 1 && labels.size() >= 2 && labels[0] == labels[1]) return std::nullopt;
        if (match) return p;
    }
    return std::nullopt;
}

}  // namespace

SegmentSchedule estimate_segment_schedule(std::size_t num_days, const std::vector<int>& labels,
                                          const std::vector<std::size_t>& segment_lengths,
                                          int window) {
    if (labels.empty()) throw DataError("cannot schedule without segment labels");
    SegmentSchedule schedule;
    schedule.day_labels.reserve(num_days);

    auto period = labels.size() == segment_lengths.size()
                      ? find_block_period(labels, segment_lengths, window)
                      : std::nullopt;
    if (!period) {
        schedule.day_labels.assign(num_days, labels.back());
        return schedule;
    }
    schedule.replicated_pattern = true;

    // Continue the cycle phase-aligned with the end of training: virtually
    // extend blocks by label[i] = label[i - p], length[i] = length[i - p].
    // The final training block may be truncated mid-cycle, so it first
    // contributes its residual length.
    const std::size_t p = *period;
    std::vector<int> ext_labels(labels);
    std::vector<std::size_t> ext_lengths(segment_lengths);
    const std::size_t last = ext_labels.size() - 1;
    std::size_t expected_last = ext_lengths[last - p];
    std::size_t residual =
        expected_last > ext_lengths[last] ? expected_last - ext_lengths[last] : 0;
    ext_lengths[last] = expected_last;  // future cycles copy the full length

    for (std::size_t i = 0; i < std::min(residual, num_days); ++i)
        schedule.day_labels.push_back(ext_labels[last]);
    while (schedule.day_labels.size() < num_days) {
        std::size_t i = ext_labels.size();
        ext_labels.push_back(ext_labels[i - p]);
        ext_lengths.push_back(ext_lengths[i - p]);
        for (std::size_t d = 0; d < ext_lengths.back() && schedule.day_labels.size() < num_days;
             ++d)
            schedule.day_labels.push_back(ext_labels.back());
    }
    return schedule;
}

std::vector<Micros> generate_day(CivilDay date, int global_label, int weekday_cluster,
                                 const BinGrid& grid, const ModelEnsemble& ensemble, Rng& rng) {
    std::vector<Micros> arrivals;
    if (weekday_cluster == kNoDataCluster) return arrivals;

    const Micros midnight = date * kMicrosPerDay;
    for (int l = 0; l < grid.num_bins; ++l) {
        const KdeModel* model = ensemble.find({global_label, weekday_cluster, l + 1});
        if (model == nullptr) continue;

        const Micros bin_start = midnight + grid.boundaries[static_cast<std::size_t>(l)];
        const Micros bin_end = midnight + grid.boundaries[static_cast<std::size_t>(l) + 1];
        Micros cursor = bin_start;
        while (true) {
            double gap_s = model->sample(rng);
            auto step = static_cast<Micros>(std::llround(gap_s * kMicrosPerSecond));
            if (step <= 0) step = 1;  // preserve strict ordering
            cursor += step;
            if (cursor >= bin_end) break;
            arrivals.push_back(cursor);
        }
    }
    return arrivals;
}

GeneratedArrivals generate_arrivals(const GenerationConfig& config,
                                    const GenerationContext& context) {
    if (!config.horizon_days && !config.num_cases)
        throw ConfigError("generation needs a day-count or case-count horizon");

    GeneratedArrivals out;
    const bool by_days = config.horizon_days.has_value();
    std::size_t max_days;
    if (by_days) {
        if (*config.horizon_days < 0) throw ConfigError("horizon must be non-negative");
        max_days = static_cast<std::size_t>(*config.horizon_days);
    } else {
        if (*config.num_cases < 0) throw ConfigError("case count must be non-negative");
        // Guard against pathologically silent ensembles: allow ten times the
        // expected number of days before giving up.
        double rate = std::max(context.mean_daily_arrivals, 1e-9);
        double expected = std::ceil(static_cast<double>(*config.num_cases) / rate);
        max_days = static_cast<std::size_t>(10.0 * std::max(expected, 1.0)) + 14;
    }

    SegmentSchedule schedule = estimate_segment_schedule(max_days, context.labels,
                                                         context.segment_lengths, context.window);

    std::size_t total = 0;
    const auto target = by_days ? 0 : static_cast<std::size_t>(*config.num_cases);
    for (std::size_t i = 0; i < max_days; ++i) {
        if (!by_days && total >= target) break;
        CivilDay date = config.start_date + static_cast<CivilDay>(i);
        int j = schedule.day_labels[i];
        int k = context.weekdays.cluster_of(j, weekday_mon1(date));
        Rng rng(substream_seed(config.seed, i));
        DayArrivals day;
        day.date = date;
        day.timestamps = generate_day(date, j, k, context.grid, context.ensemble, rng);
        total += day.timestamps.size();
        out.days.push_back(std::move(day));
    }

    if (!by_days) {
        if (total < target)
            throw DataError("case-count horizon unreachable: ensemble produced " +
                            std::to_string(total) + " arrivals over " +
                            std::to_string(max_days) + " days");
        std::size_t excess = total - target;
        while (excess > 0) {  // truncate to exactly the target
            auto& last_ts = out.days.back().timestamps;
            std::size_t drop = std::min(excess, last_ts.size());
            last_ts.resize(last_ts.size() - drop);
            excess -= drop;
            if (last_ts.empty() && excess > 0) out.days.pop_back();
        }
    }
    return out;
}

}  // namespace atkde
