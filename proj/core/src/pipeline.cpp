#include "atkde/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "atkde/errors.hpp"
#include "atkde/evaluate.hpp"
#include "atkde/stats.hpp"

namespace atkde {

GenerationContext AtkdeModel::context() const {
    GenerationContext ctx;
    ctx.labels = globals.labels;
    for (const auto& seg : globals.segments) ctx.segment_lengths.push_back(seg.length());
    ctx.window = window;
    ctx.weekdays = weekdays;
    ctx.grid = make_bin_grid(lower_time, upper_time, bins);
    ctx.ensemble = ensemble;
    ctx.mean_daily_arrivals = mean_daily_arrivals;
    return ctx;
}

namespace {

/// Fits everything except the bandwidth factor.
AtkdeModel fit_structure(const ArrivalDataset& train, const AtkdeParams& params) {
    if (train.empty()) throw DataError("cannot fit on an empty training dataset");
    AtkdeModel model;
    model.window = params.divide.window;
    model.bins = params.bins;
    model.globals = cluster_global_segments(train, params.divide);
    model.weekdays = cluster_weekdays(train, model.globals, params.silhouette_threshold);
    std::tie(model.lower_time, model.upper_time) = determine_bounds(train);
    model.mean_daily_arrivals =
        static_cast<double>(train.num_arrivals()) / static_cast<double>(train.num_days());
    model.default_start_date = train.days.back().date + 1;
    model.default_horizon_days = static_cast<std::int64_t>(train.num_days());
    return model;
}

}  // namespace

double tune_bandwidth_factor(const ArrivalDataset& train, const AtkdeParams& params,
                             FitDiagnostics* diagnostics) {
    const auto& search = params.search;
    if (search.factor_grid.empty()) throw ConfigError("bandwidth factor grid is empty");
    if (search.factor_grid.size() == 1) return search.factor_grid.front();

    ArrivalDataset inner_train, inner_val;
    try {
        SplitSpec spec{1.0 - search.validation_fraction};
        std::tie(inner_train, inner_val) = temporal_split(train, spec);
    } catch (const DataError&) {
        if (diagnostics) diagnostics->tuning_note = "inner split impossible; factor defaulted to 1";
        return 1.0;
    }
    if (inner_val.empty() || inner_train.empty()) {
        if (diagnostics) diagnostics->tuning_note = "empty inner validation; factor defaulted to 1";
        return 1.0;
    }

    AtkdeModel inner;
    try {
        inner = fit_structure(inner_train, params);
    } catch (const DataError&) {
        if (diagnostics) diagnostics->tuning_note = "inner fit failed; factor defaulted to 1";
        return 1.0;
    }
    auto grid = make_bin_grid(inner.lower_time, inner.upper_time, params.bins);
    auto partition = build_partition(inner_train, inner.globals, inner.weekdays, grid);

    GenerationConfig gen;
    gen.start_date = inner_val.days.front().date;
    gen.horizon_days = static_cast<std::int64_t>(inner_val.num_days());
    const auto val_arrivals = inner_val.flatten();

    std::vector<FactorScore> results;
    for (double factor : search.factor_grid) {
        inner.ensemble = fit_ensemble(partition, factor);
        GenerationContext ctx = inner.context();
        std::vector<double> scores;
        for (int s = 0; s < search.seeds_per_candidate; ++s) {
            gen.seed = search.base_seed + static_cast<std::uint64_t>(s);
            auto sim = generate_arrivals(gen, ctx).flatten();
            // An ensemble that generates nothing for this window is scored
            // as unusable rather than erroring the whole fit.
            double score = sim.empty() ? std::numeric_limits<double>::infinity()
                                       : compute_cadd(val_arrivals, sim).sqrt_cadd;
            scores.push_back(score);
        }
        double m = mean(scores);
        double se = scores.size() > 1 && std::isfinite(m)
                        ? sample_stddev(scores) / std::sqrt(static_cast<double>(scores.size()))
                        : 0.0;
        results.push_back({factor, m, se});
        if (diagnostics) diagnostics->factor_scores.push_back({factor, m, se});
    }

    const FactorScore* best = &results.front();
    for (const auto& r : results)
        if (r.mean_sqrt_cadd < best->mean_sqrt_cadd) best = &r;
    if (!std::isfinite(best->mean_sqrt_cadd)) {
        if (diagnostics)
            diagnostics->tuning_note = "no candidate generated arrivals; factor defaulted to 1";
        return 1.0;
    }
    // One-standard-error rule: score differences inside the Monte Carlo noise
    // band are ties, resolved toward the smallest factor (least smoothing).
    double band = best->mean_sqrt_cadd + best->std_error;
    double chosen = best->factor;
    for (const auto& r : results) {
        if (r.mean_sqrt_cadd > band) continue;
        chosen = std::min(chosen, r.factor);
    }
    return chosen;
}

AtkdeModel fit_atkde(const ArrivalDataset& train, const AtkdeParams& params) {
    AtkdeModel model = fit_structure(train, params);
    model.diagnostics.daily_counts = arrival_count_sequence(train);
    const auto w = static_cast<std::size_t>(params.divide.window);
    if (model.diagnostics.daily_counts.size() >= w) {
        model.diagnostics.moving_averages =
            moving_average(model.diagnostics.daily_counts, params.divide.window);
        if (model.diagnostics.moving_averages.size() >= w + 1)
            model.diagnostics.diff_series =
                sliding_window_differences(model.diagnostics.moving_averages,
                                           params.divide.window);
    }

    double factor = tune_bandwidth_factor(train, params, &model.diagnostics);
    auto grid = make_bin_grid(model.lower_time, model.upper_time, params.bins);
    auto partition = build_partition(train, model.globals, model.weekdays, grid);
    model.ensemble = fit_ensemble(partition, factor);
    return model;
}

GeneratedArrivals generate_atkde(const AtkdeModel& model, const GenerationConfig& config) {
    return generate_arrivals(config, model.context());
}

}  // namespace atkde
