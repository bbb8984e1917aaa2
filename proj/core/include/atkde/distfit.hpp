#pragma once

#include <span>
#include <string>
#include <vector>

#include "atkde/rng.hpp"

namespace atkde {

enum class DistFamily { Fixed, Exponential, Gamma, LogNormal, TruncNormal, Uniform };

std::string family_name(DistFamily family);
DistFamily family_from_name(const std::string& name);

/// A fitted non-negative inter-arrival distribution.
struct FittedDistribution {
    DistFamily family = DistFamily::Exponential;
    // Fixed: {value}; Exponential: {mean}; Gamma: {shape, scale};
    // LogNormal: {mu, sigma}; TruncNormal: {mu, sigma}; Uniform: {a, b}.
    std::vector<double> params;
    double ks = 0.0;  // KS statistic against the fitting sample

    double cdf(double x) const;
    double sample(Rng& rng) const;
};

/// Fits one family (MLE; moments for Fixed/Uniform). Throws DataError for
/// fewer than 2 samples.
FittedDistribution fit_family(std::span<const double> samples, DistFamily family);

/// Kolmogorov-Smirnov statistic of a fitted CDF against the sample.
double ks_statistic(std::span<const double> samples, const FittedDistribution& dist);

/// Fits every candidate family and returns the one with the smallest KS
/// statistic (ties resolved by candidate-list order).
FittedDistribution fit_best_family(std::span<const double> samples);

}  // namespace atkde
