#include "atkde/distfit.hpp"

#include <algorithm>
#include <cmath>

#include "atkde/errors.hpp"
#include "atkde/stats.hpp"

namespace atkde {

namespace {
constexpr double kTiny = 1e-9;
}

std::string family_name(DistFamily family) {
    switch (family) {
        case DistFamily::Fixed: return "fixed";
        case DistFamily::Exponential: return "exponential";
        case DistFamily::Gamma: return "gamma";
        case DistFamily::LogNormal: return "lognormal";
        case DistFamily::TruncNormal: return "truncated_normal";
        case DistFamily::Uniform: return "uniform";
    }
    return "unknown";
}

DistFamily family_from_name(const std::string& name) {
    for (DistFamily f : {DistFamily::Fixed, DistFamily::Exponential, DistFamily::Gamma,
                         DistFamily::LogNormal, DistFamily::TruncNormal, DistFamily::Uniform})
        if (family_name(f) == name) return f;
    throw ParseError("unknown distribution family: " + name);
}

double FittedDistribution::cdf(double x) const {
    switch (family) {
        case DistFamily::Fixed:
            return x >= params[0] ? 1.0 : 0.0;
        case DistFamily::Exponential:
            return x <= 0.0 ? 0.0 : 1.0 - std::exp(-x / params[0]);
        case DistFamily::Gamma:
            return x <= 0.0 ? 0.0 : gamma_p(params[0], x / params[1]);
        case DistFamily::LogNormal:
            return x <= 0.0 ? 0.0 : normal_cdf((std::log(x) - params[0]) / params[1]);
        case DistFamily::TruncNormal: {
            if (x < 0.0) return 0.0;
            double p0 = normal_cdf(-params[0] / params[1]);
            double p = normal_cdf((x - params[0]) / params[1]);
            return (p - p0) / (1.0 - p0);
        }
        case DistFamily::Uniform: {
            if (x <= params[0]) return 0.0;
            if (x >= params[1]) return 1.0;
            return (x - params[0]) / (params[1] - params[0]);
        }
    }
    return 0.0;
}

double FittedDistribution::sample(Rng& rng) const {
    switch (family) {
        case DistFamily::Fixed:
            return params[0];
        case DistFamily::Exponential: {
            double u = rng.uniform();
            while (u >= 1.0) u = rng.uniform();
            return -params[0] * std::log1p(-u);
        }
        case DistFamily::Gamma: {
            // Marsaglia-Tsang; shape < 1 boosted via the u^(1/k) trick.
            double shape = params[0];
            double boost = 1.0;
            if (shape < 1.0) {
                boost = std::pow(std::max(rng.uniform(), kTiny), 1.0 / shape);
                shape += 1.0;
            }
            double d = shape - 1.0 / 3.0;
            double c = 1.0 / std::sqrt(9.0 * d);
            while (true) {
                double x = rng.normal();
                double v = 1.0 + c * x;
                if (v <= 0.0) continue;
                v = v * v * v;
                double u = rng.uniform();
                if (u < 1.0 - 0.0331 * x * x * x * x ||
                    std::log(std::max(u, kTiny)) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
                    return boost * d * v * params[1];
            }
        }
        case DistFamily::LogNormal:
            return std::exp(params[0] + params[1] * rng.normal());
        case DistFamily::TruncNormal: {
            double p0 = normal_cdf(-params[0] / params[1]);
            double u = p0 + rng.uniform() * (1.0 - p0);
            u = std::clamp(u, kTiny, 1.0 - kTiny);
            return std::max(0.0, params[0] + params[1] * normal_icdf(u));
        }
        case DistFamily::Uniform:
            return params[0] + rng.uniform() * (params[1] - params[0]);
    }
    return 0.0;
}

namespace {

std::vector<double> log_samples(std::span<const double> samples) {
    std::vector<double> out;
    out.reserve(samples.size());
    for (double s : samples) out.push_back(std::log(std::max(s, kTiny)));
    return out;
}

double gamma_shape_mle(double s) {
    // Solve ln(k) - digamma(k) = s by Newton with a numeric derivative.
    double k = (3.0 - s + std::sqrt((s - 3.0) * (s - 3.0) + 24.0 * s)) / (12.0 * s);
    k = std::clamp(k, 1e-3, 1e6);
    for (int it = 0; it < 50; ++it) {
        double g = std::log(k) - digamma(k) - s;
        double eps = k * 1e-6;
        double gp = (std::log(k + eps) - digamma(k + eps) - (std::log(k - eps) - digamma(k - eps))) /
                    (2.0 * eps);
        double step = g / gp;
        double next = std::clamp(k - step, 1e-3, 1e6);
        if (std::fabs(next - k) < 1e-10 * k) return next;
        k = next;
    }
    return k;
}

}  // namespace

FittedDistribution fit_family(std::span<const double> samples, DistFamily family) {
    if (samples.size() < 2) throw DataError("distribution fitting needs at least 2 samples");
    FittedDistribution dist;
    dist.family = family;
    const double m = mean(samples);
    const double sd = sample_stddev(samples);

    switch (family) {
        case DistFamily::Fixed:
            dist.params = {m};
            break;
        case DistFamily::Exponential:
            dist.params = {std::max(m, kTiny)};
            break;
        case DistFamily::Gamma: {
            auto logs = log_samples(samples);
            double s = std::log(std::max(m, kTiny)) - mean(logs);
            double shape = s > kTiny ? gamma_shape_mle(s) : std::max(m * m / std::max(sd * sd, kTiny), kTiny);
            dist.params = {shape, std::max(m, kTiny) / shape};
            break;
        }
        case DistFamily::LogNormal: {
            auto logs = log_samples(samples);
            dist.params = {mean(logs), std::max(sample_stddev(logs), kTiny)};
            break;
        }
        case DistFamily::TruncNormal:
            dist.params = {m, std::max(sd, kTiny)};
            break;
        case DistFamily::Uniform: {
            double half = std::sqrt(3.0) * sd;
            double a = std::max(0.0, m - half);
            double b = m + half;
            if (b - a < kTiny) b = a + kTiny;
            dist.params = {a, b};
            break;
        }
    }
    dist.ks = ks_statistic(samples, dist);
    return dist;
}

double ks_statistic(std::span<const double> samples, const FittedDistribution& dist) {
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());

    if (dist.family == DistFamily::Fixed) {
        // Both CDFs are step functions; evaluate the sup at every
        // discontinuity from both sides.
        std::vector<double> points = sorted;
        points.push_back(dist.params[0]);
        std::sort(points.begin(), points.end());
        double d = 0.0;
        for (double x : points) {
            double fn_at = static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), x) -
                                               sorted.begin()) / n;
            double fn_before = static_cast<double>(std::lower_bound(sorted.begin(), sorted.end(),
                                                                    x) - sorted.begin()) / n;
            double f_at = x >= dist.params[0] ? 1.0 : 0.0;
            double f_before = x > dist.params[0] ? 1.0 : 0.0;
            d = std::max({d, std::fabs(fn_at - f_at), std::fabs(fn_before - f_before)});
        }
        return d;
    }

    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        double f = dist.cdf(sorted[i]);
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    }
    return d;
}

FittedDistribution fit_best_family(std::span<const double> samples) {
    static constexpr DistFamily kCandidates[] = {DistFamily::Fixed,     DistFamily::Exponential,
                                                 DistFamily::Gamma,     DistFamily::LogNormal,
                                                 DistFamily::TruncNormal, DistFamily::Uniform};
    std::vector<FittedDistribution> fits;
    for (DistFamily f : kCandidates) fits.push_back(fit_family(samples, f));
    double best_ks = fits.front().ks;
    for (const auto& fit : fits) best_ks = std::min(best_ks, fit.ks);

    // KS differences below the statistic's own sampling resolution are noise;
    // within that band the earlier (simpler) candidate wins.
    const double tol = 0.5 / std::sqrt(static_cast<double>(samples.size()));
    for (const auto& fit : fits)
        if (fit.ks <= best_ks + tol) return fit;
    return fits.front();
}

}  // namespace atkde
