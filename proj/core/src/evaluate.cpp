#include "atkde/evaluate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "atkde/errors.hpp"
#include "atkde/stats.hpp"

namespace atkde {

double HourHistogram::total() const {
    double t = 0.0;
    for (double c : counts) t += c;
    return t;
}

HourHistogram hourly_histogram(std::span<const Micros> arrivals, Micros origin) {
    HourHistogram hist;
    hist.origin = origin;
    for (Micros t : arrivals) {
        if (t < origin)
            throw EvalError("arrival " + format_iso8601(t) + " precedes the histogram origin");
        auto idx = static_cast<std::size_t>((t - origin) / kMicrosPerHour);
        if (idx >= hist.counts.size()) hist.counts.resize(idx + 1, 0.0);
        hist.counts[idx] += 1.0;
    }
    return hist;
}

double emd_1d(const HourHistogram& a, const HourHistogram& b) {
    const double total_a = a.total();
    const double total_b = b.total();
    if (total_a <= 0.0 || total_b <= 0.0) throw EvalError("EMD of an empty histogram");

    const std::size_t len = std::max(a.counts.size(), b.counts.size());
    double cdf_a = 0.0, cdf_b = 0.0, distance = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        if (i < a.counts.size()) cdf_a += a.counts[i] / total_a;
        if (i < b.counts.size()) cdf_b += b.counts[i] / total_b;
        distance += std::fabs(cdf_a - cdf_b);
    }
    return distance;
}

CaddReport compute_cadd(std::span<const Micros> test, std::span<const Micros> simulated) {
    if (test.empty()) throw EvalError("test arrival set is empty");
    if (simulated.empty()) throw EvalError("simulated arrival set is empty");
    Micros origin = std::min(*std::min_element(test.begin(), test.end()),
                             *std::min_element(simulated.begin(), simulated.end()));
    CaddReport report;
    report.cadd = emd_1d(hourly_histogram(test, origin), hourly_histogram(simulated, origin));
    report.sqrt_cadd = std::sqrt(report.cadd);
    report.test_count = test.size();
    report.sim_count = simulated.size();
    return report;
}

std::vector<BenchmarkRow> benchmark_run(std::span<const Micros> test,
                                        const std::vector<BenchmarkModelSpec>& models, int runs,
                                        std::uint64_t base_seed) {
    if (runs < 1) throw ConfigError("benchmark needs at least 1 run");
    using Clock = std::chrono::steady_clock;
    std::vector<BenchmarkRow> rows;
    rows.reserve(models.size());

    for (const auto& model : models) {
        BenchmarkRow row;
        row.name = model.name;
        try {
            auto t0 = Clock::now();
            if (model.fit) model.fit();
            row.fit_seconds = std::chrono::duration<double>(Clock::now() - t0).count();

            double gen_total = 0.0;
            for (int r = 0; r < runs; ++r) {
                auto g0 = Clock::now();
                auto sim = model.generate(base_seed + static_cast<std::uint64_t>(r));
                gen_total += std::chrono::duration<double>(Clock::now() - g0).count();
                row.run_scores.push_back(compute_cadd(test, sim).sqrt_cadd);
            }
            row.gen_seconds = gen_total / runs;
            row.mean_sqrt_cadd = mean(row.run_scores);
            row.std_sqrt_cadd = sample_stddev(row.run_scores);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace atkde
