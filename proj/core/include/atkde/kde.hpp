#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "atkde/partition.hpp"
#include "atkde/rng.hpp"

namespace atkde {

/// Bandwidth used when a cell has fewer than 2 samples or zero spread.
inline constexpr double kFloorBandwidthSeconds = 1.0;

/// Gaussian KDE over inter-arrival seconds.
struct KdeModel {
    std::vector<double> samples;
    double bandwidth = kFloorBandwidthSeconds;

    /// f(x) = (1/nh) sum K((x - X_i) / h) with the standard normal kernel.
    double density(double x) const;

    /// Smoothed bootstrap: X_i + h * eps. Negative draws are rejected and
    /// redrawn (up to 100 attempts, then 0).
    double sample(Rng& rng) const;
};

/// Robust Silverman rule: 0.9 * min(sd, IQR / 1.34) * n^(-1/5).
/// Returns the floor bandwidth for n < 2 or zero spread.
double silverman_bandwidth(std::span<const double> samples);

struct ModelEnsemble {
    std::map<CellKey, KdeModel> models;  // cells with zero samples are absent
    double bandwidth_factor = 1.0;

    const KdeModel* find(const CellKey& key) const {
        auto it = models.find(key);
        return it == models.end() ? nullptr : &it->second;
    }
};

/// One model per populated cell, bandwidth = factor * silverman(cell).
ModelEnsemble fit_ensemble(const TrainingPartition& partition, double factor);

struct BandwidthSearchConfig {
    std::vector<double> factor_grid = {0.25, 0.5, 1.0, 2.0,  4.0,  8.0,
                                       16.0, 32.0, 64.0, 128.0, 200.0};
    double validation_fraction = 0.2;
    int seeds_per_candidate = 3;
    std::uint64_t base_seed = 1;
};

}  // namespace atkde
