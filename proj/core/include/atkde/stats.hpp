#pragma once

#include <span>
#include <vector>

namespace atkde {

double mean(std::span<const double> values);

/// Sample standard deviation (n - 1 denominator); 0 for n < 2.
double sample_stddev(std::span<const double> values);

/// Population standard deviation (n denominator); 0 for empty input.
double population_stddev(std::span<const double> values);

/// Quantile with linear interpolation between order statistics
/// (position (n - 1) * q). q in [0, 1]. Input need not be sorted.
double quantile_linear(std::span<const double> values, double q);

/// IQR = Q3 - Q1 with linear-interpolation quartiles.
double interquartile_range(std::span<const double> values);

/// Standardizes each column to zero mean and unit population variance.
/// Zero-variance columns are set to 0 everywhere.
std::vector<std::vector<double>> standardize_columns(
    const std::vector<std::vector<double>>& rows);

double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// Inverse standard normal CDF (Acklam's rational approximation, ~1e-9).
double normal_icdf(double p);

/// Standard normal CDF.
double normal_cdf(double x);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

double digamma(double x);

}  // namespace atkde
