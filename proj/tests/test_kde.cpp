#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "atkde/kde.hpp"
#include "atkde/stats.hpp"
#include "helpers.hpp"

using namespace atkde;

namespace {

double trapezoid_integral(const KdeModel& model, double lo, double hi, int points) {
    double step = (hi - lo) / (points - 1);
    double sum = 0.5 * (model.density(lo) + model.density(hi));
    for (int i = 1; i + 1 < points; ++i) sum += model.density(lo + i * step);
    return sum * step;
}

/// Two-sided Kolmogorov distance between a sample and a reference sample.
double ks_between(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        double fa = static_cast<double>(i) / static_cast<double>(a.size());
        double fb = static_cast<double>(j) / static_cast<double>(b.size());
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

}  // namespace

TEST_CASE("silverman bandwidth matches the closed form") {
    // 100 samples engineered so the standard deviation term is the minimum.
    Rng rng(5);
    std::vector<double> samples;
    for (int i = 0; i < 100; ++i) samples.push_back(100.0 + rng.normal());
    double sd = sample_stddev(samples);
    double iqr = interquartile_range(samples);
    double expected = 0.9 * std::min(sd, iqr / 1.34) * std::pow(100.0, -0.2);
    CHECK(silverman_bandwidth(samples) == doctest::Approx(expected).epsilon(1e-12));
    // With sd near 1 and the robust term close, h is near 0.9 * 100^(-1/5).
    CHECK(silverman_bandwidth(samples) ==
          doctest::Approx(0.9 * std::pow(100.0, -0.2)).epsilon(0.25));
}

TEST_CASE("silverman falls back to the floor bandwidth") {
    CHECK(silverman_bandwidth(std::vector<double>{5.0}) == kFloorBandwidthSeconds);
    CHECK(silverman_bandwidth(std::vector<double>(50, 3.0)) == kFloorBandwidthSeconds);
    CHECK(silverman_bandwidth(std::vector<double>{}) == kFloorBandwidthSeconds);
}

TEST_CASE("silverman bandwidth scales with the data") {
    Rng rng(6);
    std::vector<double> samples, scaled;
    for (int i = 0; i < 200; ++i) {
        double v = 50.0 + 10.0 * rng.normal();
        samples.push_back(v);
        scaled.push_back(v * 3.5);
    }
    CHECK(silverman_bandwidth(scaled) ==
          doctest::Approx(3.5 * silverman_bandwidth(samples)).epsilon(1e-9));
}

TEST_CASE("density at a kernel center") {
    KdeModel one{{0.0}, 1.0};
    CHECK(one.density(0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-12));

    KdeModel two{{-1.0, 1.0}, 1.0};
    double phi1 = std::exp(-0.5) / std::sqrt(2.0 * M_PI);
    CHECK(two.density(0.0) == doctest::Approx(phi1).epsilon(1e-12));
}

TEST_CASE("density integrates to one") {
    Rng rng(9);
    std::vector<double> samples;
    for (int i = 0; i < 60; ++i) samples.push_back(300.0 + 80.0 * rng.normal());
    KdeModel model{samples, silverman_bandwidth(samples)};
    double lo = *std::min_element(samples.begin(), samples.end()) - 10.0 * model.bandwidth;
    double hi = *std::max_element(samples.begin(), samples.end()) + 10.0 * model.bandwidth;
    CHECK(trapezoid_integral(model, lo, hi, 10000) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("density is symmetric for symmetric samples") {
    KdeModel model{{-2.0, -1.0, 1.0, 2.0}, 0.7};
    for (double d : {0.1, 0.5, 1.3, 2.9})
        CHECK(model.density(d) == doctest::Approx(model.density(-d)).epsilon(1e-12));
}

TEST_CASE("sampling is deterministic under a fixed seed") {
    KdeModel model{{10.0, 20.0, 30.0}, 2.0};
    Rng a(123), b(123);
    for (int i = 0; i < 50; ++i) CHECK(model.sample(a) == model.sample(b));
}

TEST_CASE("tiny bandwidth reproduces the data points") {
    KdeModel model{{5.0, 15.0, 25.0}, 1e-12};
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        double v = model.sample(rng);
        bool near = std::abs(v - 5.0) < 1e-6 || std::abs(v - 15.0) < 1e-6 ||
                    std::abs(v - 25.0) < 1e-6;
        CHECK(near);
    }
}

TEST_CASE("single-point model sampling mean") {
    KdeModel model{{60.0}, 5.0};
    Rng rng(77);
    double sum = 0.0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) sum += model.sample(rng);
    CHECK(sum / n == doctest::Approx(60.0).epsilon(1.0 / 60.0));
}

TEST_CASE("sampling KS consistency for well-spread data") {
    Rng data_rng(4);
    std::vector<double> samples;
    for (int i = 0; i < 2000; ++i) samples.push_back(500.0 + 50.0 * data_rng.normal());
    KdeModel model{samples, 0.05 * silverman_bandwidth(samples)};
    Rng rng(8);
    std::vector<double> draws;
    draws.reserve(100000);
    for (int i = 0; i < 100000; ++i) draws.push_back(model.sample(rng));
    CHECK(ks_between(samples, draws) <= 0.02);
}

TEST_CASE("fit_ensemble applies the factor and the floor") {
    TrainingPartition part;
    CellKey a{1, 1, 1}, b{1, 1, 2}, c{1, 1, 3};
    part.raw[a] = {1, 2, 3};
    part.interarrivals[a] = {100.0, 200.0, 300.0, 150.0};
    part.raw[b] = {4};
    part.interarrivals[b] = {60.0};  // single sample: floor ground bandwidth
    part.raw[c] = {5};
    part.interarrivals[c] = {};      // no gap: cell absent

    auto e1 = fit_ensemble(part, 1.0);
    auto e2 = fit_ensemble(part, 2.0);
    REQUIRE(e1.models.size() == 2);
    CHECK(e1.find(c) == nullptr);
    CHECK(e1.find(b)->bandwidth == doctest::Approx(kFloorBandwidthSeconds));
    CHECK(e2.find(a)->bandwidth == doctest::Approx(2.0 * e1.find(a)->bandwidth));
    CHECK(e2.bandwidth_factor == 2.0);
}
