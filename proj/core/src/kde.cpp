#include "atkde/kde.hpp"

#include <cmath>

#include "atkde/stats.hpp"

namespace atkde {

double KdeModel::density(double x) const {
    constexpr double inv_sqrt_2pi = 0.3989422804014327;
    double sum = 0.0;
    for (double s : samples) {
        double u = (x - s) / bandwidth;
        sum += std::exp(-0.5 * u * u);
    }
    return inv_sqrt_2pi * sum / (static_cast<double>(samples.size()) * bandwidth);
}

double KdeModel::sample(Rng& rng) const {
    for (int attempt = 0; attempt < 100; ++attempt) {
        double draw = samples[rng.index(samples.size())] + bandwidth * rng.normal();
        if (draw >= 0.0) return draw;
    }
    return 0.0;
}

double silverman_bandwidth(std::span<const double> samples) {
    const std::size_t n = samples.size();
    if (n < 2) return kFloorBandwidthSeconds;
    double sd = sample_stddev(samples);
    if (sd <= 0.0) return kFloorBandwidthSeconds;
    double spread = std::min(sd, interquartile_range(samples) / 1.34);
    double h = 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
    return h > 0.0 ? h : kFloorBandwidthSeconds;
}

ModelEnsemble fit_ensemble(const TrainingPartition& partition, double factor) {
    ModelEnsemble ensemble;
    ensemble.bandwidth_factor = factor;
    for (const auto& [key, raw] : partition.raw) {
        // Cells whose timestamps never produced a same-bin gap stay absent;
        // generation emits no arrivals for them.
        auto it = partition.interarrivals.find(key);
        if (it == partition.interarrivals.end() || it->second.empty()) continue;
        KdeModel model;
        model.samples = it->second;
        model.bandwidth = factor * silverman_bandwidth(model.samples);
        ensemble.models.emplace(key, std::move(model));
    }
    return ensemble;
}

}  // namespace atkde
