// Shared builders for synthetic arrival datasets used across the tests.
#pragma once

#include <cmath>
#include <vector>

#include "atkde/eventlog.hpp"
#include "atkde/rng.hpp"

namespace testutil {

using atkde::ArrivalDataset;
using atkde::CivilDay;
using atkde::Micros;

inline constexpr CivilDay kDay0 = 19723;  // 2024-01-01, a Monday

/// Dataset with `per_day[i]` evenly spaced arrivals on day kDay0 + i between
/// 09:00 and 17:00.
inline ArrivalDataset even_dataset(const std::vector<int>& per_day, CivilDay start = kDay0) {
    std::vector<Micros> arrivals;
    for (std::size_t i = 0; i < per_day.size(); ++i) {
        CivilDay d = start + static_cast<CivilDay>(i);
        int n = per_day[i];
        for (int a = 0; a < n; ++a) {
            std::int64_t tod = 9 * atkde::kMicrosPerHour +
                               (n > 1 ? a * (8 * atkde::kMicrosPerHour) / (n - 1) : 0);
            arrivals.push_back(atkde::instant_at(d, tod));
        }
    }
    return atkde::dataset_from_arrivals(std::move(arrivals));
}

/// Poisson-process day: `rate` expected arrivals uniformly over 09:00-17:00.
inline void poisson_day(std::vector<Micros>& out, CivilDay date, double rate, atkde::Rng& rng) {
    // Sample the count, then uniform order statistics inside working hours.
    double l = std::exp(-rate);
    int count = 0;
    double p = 1.0;
    if (rate < 50) {
        do {
            ++count;
            p *= rng.uniform();
        } while (p > l);
        --count;
    } else {
        count = static_cast<int>(std::llround(rate + std::sqrt(rate) * rng.normal()));
        if (count < 0) count = 0;
    }
    for (int i = 0; i < count; ++i) {
        std::int64_t tod = 9 * atkde::kMicrosPerHour +
                           static_cast<std::int64_t>(rng.uniform() * 8 * atkde::kMicrosPerHour);
        out.push_back(atkde::instant_at(date, tod));
    }
}

/// Piecewise-constant-rate dataset: block b covers `block_days[b]` days at
/// `block_rates[b]` expected arrivals per day.
inline ArrivalDataset block_dataset(const std::vector<int>& block_days,
                                    const std::vector<double>& block_rates, std::uint64_t seed,
                                    CivilDay start = kDay0) {
    atkde::Rng rng(seed);
    std::vector<Micros> arrivals;
    CivilDay d = start;
    for (std::size_t b = 0; b < block_days.size(); ++b)
        for (int i = 0; i < block_days[b]; ++i, ++d) poisson_day(arrivals, d, block_rates[b], rng);
    return atkde::dataset_from_arrivals(std::move(arrivals));
}

}  // namespace testutil
