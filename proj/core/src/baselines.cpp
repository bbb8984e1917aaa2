#include "atkde/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "atkde/divide.hpp"
#include "atkde/errors.hpp"
#include "atkde/stats.hpp"

namespace atkde {

CalendarAugmentation fit_calendar(const ArrivalDataset& train) {
    if (train.empty()) throw DataError("cannot fit a calendar on an empty dataset");
    CalendarAugmentation cal;
    std::array<int, 7> observed{};
    std::array<int, 7> populated{};
    for (const auto& day : train.days) {
        auto wd = static_cast<std::size_t>(day.weekday() - 1);
        ++observed[wd];
        if (!day.timestamps.empty()) {
            ++populated[wd];
            cal.first_tod_pool.push_back(time_of_day(day.timestamps.front()));
            cal.last_tod_pool.push_back(time_of_day(day.timestamps.back()));
        }
    }
    for (std::size_t wd = 0; wd < 7; ++wd)
        cal.work_probability[wd] =
            observed[wd] > 0 ? static_cast<double>(populated[wd]) / observed[wd] : 0.0;
    return cal;
}

namespace {

std::vector<double> all_interarrivals(const ArrivalDataset& train) {
    if (train.days.empty()) throw DataError("empty dataset");
    return within_day_interarrivals(train, 0, train.days.size() - 1);
}

GeneratedArrivals generate_with(const CalendarAugmentation& cal,
                                const std::function<double(Rng&)>& sample_gap,
                                const GenerationConfig& config) {
    if (!config.horizon_days && !config.num_cases)
        throw ConfigError("generation needs a day-count or case-count horizon");
    if (cal.first_tod_pool.empty()) throw DataError("calendar has no populated days");

    const bool by_days = config.horizon_days.has_value();
    std::size_t max_days = by_days ? static_cast<std::size_t>(*config.horizon_days)
                                   : static_cast<std::size_t>(*config.num_cases) * 10 + 366;
    const auto target = by_days ? 0 : static_cast<std::size_t>(*config.num_cases);

    const std::int64_t pool_min =
        *std::min_element(cal.first_tod_pool.begin(), cal.first_tod_pool.end());
    const std::int64_t pool_max =
        *std::max_element(cal.last_tod_pool.begin(), cal.last_tod_pool.end());

    GeneratedArrivals out;
    std::size_t total = 0;
    for (std::size_t i = 0; i < max_days; ++i) {
        if (!by_days && total >= target) break;
        CivilDay date = config.start_date + static_cast<CivilDay>(i);
        Rng rng(substream_seed(config.seed, i));
        DayArrivals day;
        day.date = date;

        double p = cal.work_probability[static_cast<std::size_t>(weekday_mon1(date) - 1)];
        if (rng.bernoulli(p)) {
            std::int64_t first = pool_min, last = pool_max;
            for (int attempt = 0; attempt < 100; ++attempt) {
                std::int64_t f = cal.first_tod_pool[rng.index(cal.first_tod_pool.size())];
                std::int64_t l = cal.last_tod_pool[rng.index(cal.last_tod_pool.size())];
                if (f < l) {
                    first = f;
                    last = l;
                    break;
                }
            }
            Micros cursor = instant_at(date, first);
            const Micros end = instant_at(date, last);
            day.timestamps.push_back(cursor);
            while (true) {
                double gap_s = sample_gap(rng);
                auto step = static_cast<Micros>(std::llround(gap_s * kMicrosPerSecond));
                if (step <= 0) step = 1;
                cursor += step;
                if (cursor > end) break;
                day.timestamps.push_back(cursor);
            }
        }
        total += day.timestamps.size();
        out.days.push_back(std::move(day));
    }

    if (!by_days) {
        if (total < target)
            throw DataError("case-count horizon unreachable with this baseline model");
        std::size_t excess = total - target;
        while (excess > 0) {
            auto& ts = out.days.back().timestamps;
            std::size_t drop = std::min(excess, ts.size());
            ts.resize(ts.size() - drop);
            excess -= drop;
            if (ts.empty() && excess > 0) out.days.pop_back();
        }
    }
    return out;
}

}  // namespace

MeanModel fit_mean(const ArrivalDataset& train) {
    auto gaps = all_interarrivals(train);
    if (gaps.size() < 2) throw DataError("mean model needs at least 2 inter-arrival samples");
    MeanModel model;
    model.mean_seconds = std::max(mean(gaps), 1e-9);
    model.calendar = fit_calendar(train);
    return model;
}

BestDistModel fit_best_distribution(const ArrivalDataset& train) {
    auto gaps = all_interarrivals(train);
    if (gaps.size() < 2)
        throw DataError("best-distribution model needs at least 2 inter-arrival samples");
    BestDistModel model;
    model.dist = fit_best_family(gaps);
    model.calendar = fit_calendar(train);
    return model;
}

GeneratedArrivals generate_baseline(const MeanModel& model, const GenerationConfig& config) {
    return generate_with(model.calendar, [&](Rng&) { return model.mean_seconds; }, config);
}

GeneratedArrivals generate_baseline(const BestDistModel& model, const GenerationConfig& config) {
    return generate_with(model.calendar, [&](Rng& rng) { return model.dist.sample(rng); },
                         config);
}

}  // namespace atkde
