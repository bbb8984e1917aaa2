#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "atkde/divide.hpp"
#include "atkde/eventlog.hpp"
#include "atkde/generate.hpp"
#include "atkde/kde.hpp"
#include "atkde/partition.hpp"

namespace atkde {

struct AtkdeParams {
    DivideConfig divide;
    int bins = 3;
    BandwidthSearchConfig search;
    double silhouette_threshold = 0.25;
};

/// Per-candidate bandwidth-factor tuning outcome.
struct FactorScore {
    double factor = 0.0;
    double mean_sqrt_cadd = 0.0;
    double std_error = 0.0;  // of the mean over the tuning seeds
};

struct FitDiagnostics {
    std::vector<long long> daily_counts;
    std::vector<double> moving_averages;
    std::vector<double> diff_series;
    std::vector<FactorScore> factor_scores;
    std::string tuning_note;  // non-empty when tuning degraded to the default
};

/// A fully fitted AT-KDE model plus the context needed to generate from it.
struct AtkdeModel {
    GlobalClustering globals;
    WeekdayClusterMap weekdays;
    std::int64_t lower_time = 0;
    std::int64_t upper_time = 0;
    int bins = 3;
    int window = 7;
    ModelEnsemble ensemble;
    double mean_daily_arrivals = 0.0;

    // Default simulation window (the test window when fitted via a split).
    CivilDay default_start_date = 0;
    std::int64_t default_horizon_days = 0;

    FitDiagnostics diagnostics;

    GenerationContext context() const;
};

/// Runs the full divide / cluster / bin / tune / fit pipeline on the
/// training dataset.
AtkdeModel fit_atkde(const ArrivalDataset& train, const AtkdeParams& params = {});

/// Inner 80/20 temporal split of the training set; every grid factor is
/// fitted on the inner-train portion, used to generate arrivals over the
/// inner-validation window, and scored by mean sqrt(CADD). The smallest
/// factor whose mean score is within one standard error of the minimum wins
/// (scores inside the noise band are ties, resolved toward less smoothing).
double tune_bandwidth_factor(const ArrivalDataset& train, const AtkdeParams& params,
                             FitDiagnostics* diagnostics = nullptr);

GeneratedArrivals generate_atkde(const AtkdeModel& model, const GenerationConfig& config);

}  // namespace atkde
