#include <doctest.h>

#include <algorithm>
#include <set>

#include "atkde/errors.hpp"
#include "atkde/partition.hpp"
#include "atkde/rng.hpp"
#include "helpers.hpp"

using namespace atkde;
using testutil::kDay0;

namespace {

GlobalClustering single_cluster(std::size_t num_days) {
    GlobalClustering g;
    g.segments = {Segment{0, num_days - 1}};
    g.labels = {1};
    g.fallback = true;
    return g;
}

/// Weeks of data where each weekday gets `per_weekday[wd-1]` arrivals per day
/// (0 leaves the weekday empty), spread over working hours.
ArrivalDataset weekly_dataset(const std::array<int, 7>& per_weekday, int weeks) {
    std::vector<Micros> arrivals;
    Rng rng(99);
    for (int w = 0; w < weeks; ++w) {
        for (int wd = 0; wd < 7; ++wd) {
            CivilDay d = kDay0 + w * 7 + wd;  // kDay0 is a Monday
            for (int a = 0; a < per_weekday[static_cast<std::size_t>(wd)]; ++a) {
                std::int64_t tod = 9 * kMicrosPerHour +
                                   static_cast<std::int64_t>(rng.uniform() * 8 * kMicrosPerHour);
                arrivals.push_back(instant_at(d, tod));
            }
        }
    }
    return dataset_from_arrivals(std::move(arrivals));
}

}  // namespace

TEST_CASE("cluster_weekdays separates busy weekdays from the weekend") {
    auto ds = weekly_dataset({100, 100, 100, 100, 100, 5, 5}, 8);
    auto map = cluster_weekdays(ds, single_cluster(ds.num_days()));
    REQUIRE(map.wtc.size() == 1);
    const auto& row = map.wtc[0];
    CHECK(map.num_clusters(1) == 2);
    // Mon..Fri together, Sat/Sun together, and apart from the weekdays.
    for (int wd = 1; wd < 5; ++wd) CHECK(row[static_cast<std::size_t>(wd)] == row[0]);
    CHECK(row[5] == row[6]);
    CHECK(row[5] != row[0]);
}

TEST_CASE("cluster_weekdays keeps identical weekdays together") {
    // Identical fixed clock times every day: feature vectors coincide, all
    // pairwise distances are zero, so no split can score above the cut
    // threshold.
    std::vector<Micros> arrivals;
    for (int d = 0; d < 42; ++d)
        for (int a = 0; a < 6; ++a)
            arrivals.push_back(instant_at(kDay0 + d, (9 + a) * kMicrosPerHour));
    auto ds = dataset_from_arrivals(std::move(arrivals));
    auto map = cluster_weekdays(ds, single_cluster(ds.num_days()));
    const auto& row = map.wtc[0];
    CHECK(map.num_clusters(1) == 1);
    for (int wd = 0; wd < 7; ++wd) CHECK(row[static_cast<std::size_t>(wd)] == 1);
}

TEST_CASE("cluster_weekdays maps empty weekdays to the NoData cluster") {
    auto ds = weekly_dataset({50, 50, 50, 50, 50, 0, 0}, 6);
    auto map = cluster_weekdays(ds, single_cluster(ds.num_days()));
    const auto& row = map.wtc[0];
    CHECK(row[5] == kNoDataCluster);
    CHECK(row[6] == kNoDataCluster);
    for (int wd = 0; wd < 5; ++wd) CHECK(row[static_cast<std::size_t>(wd)] != kNoDataCluster);
}

TEST_CASE("determine_bounds min and max clock times") {
    std::vector<Micros> arrivals{
        instant_at(kDay0, 8 * kMicrosPerHour + 15 * 60 * kMicrosPerSecond),
        instant_at(kDay0 + 3, 17 * kMicrosPerHour + 40 * 60 * kMicrosPerSecond),
    };
    auto [lo, hi] = determine_bounds(dataset_from_arrivals(arrivals));
    CHECK(lo == 8 * kMicrosPerHour + 15 * 60 * kMicrosPerSecond);
    CHECK(hi == 17 * kMicrosPerHour + 40 * 60 * kMicrosPerSecond);
}

TEST_CASE("determine_bounds widens a degenerate range by 30 minutes") {
    std::vector<Micros> arrivals{instant_at(kDay0, 12 * kMicrosPerHour),
                                 instant_at(kDay0 + 1, 12 * kMicrosPerHour)};
    auto [lo, hi] = determine_bounds(dataset_from_arrivals(arrivals));
    CHECK(lo == 11 * kMicrosPerHour + 30 * 60 * kMicrosPerSecond);
    CHECK(hi == 12 * kMicrosPerHour + 30 * 60 * kMicrosPerSecond);
}

TEST_CASE("determine_bounds clamps widening at the day edges") {
    std::vector<Micros> arrivals{instant_at(kDay0, 0), instant_at(kDay0 + 1, 0)};
    auto [lo, hi] = determine_bounds(dataset_from_arrivals(arrivals));
    CHECK(lo == 0);
    CHECK(hi == 30 * 60 * kMicrosPerSecond);
}

TEST_CASE("determine_bounds covers 24/7 arrivals") {
    Rng rng(3);
    std::vector<Micros> arrivals;
    for (int i = 0; i < 5000; ++i)
        arrivals.push_back(instant_at(kDay0 + static_cast<CivilDay>(rng.index(14)),
                                      static_cast<std::int64_t>(rng.uniform() * kMicrosPerDay)));
    auto [lo, hi] = determine_bounds(dataset_from_arrivals(std::move(arrivals)));
    CHECK(lo < kMicrosPerHour);           // near midnight
    CHECK(hi > 23 * kMicrosPerHour);      // near end of day
    CHECK_THROWS_AS(determine_bounds(ArrivalDataset{}), DataError);
}

TEST_CASE("make_bin_grid divides the range equally") {
    auto g = make_bin_grid(9 * kMicrosPerHour, 18 * kMicrosPerHour, 3);
    REQUIRE(g.boundaries.size() == 4);
    CHECK(g.boundaries[0] == 9 * kMicrosPerHour);
    CHECK(g.boundaries[1] == 12 * kMicrosPerHour);
    CHECK(g.boundaries[2] == 15 * kMicrosPerHour);
    CHECK(g.boundaries[3] == 18 * kMicrosPerHour);

    auto whole = make_bin_grid(0, kMicrosPerDay - 1, 1);
    CHECK(whole.boundaries.size() == 2);

    auto four = make_bin_grid(8 * kMicrosPerHour, 20 * kMicrosPerHour, 4);
    for (std::size_t i = 1; i < four.boundaries.size(); ++i)
        CHECK(four.boundaries[i] - four.boundaries[i - 1] == 3 * kMicrosPerHour);

    CHECK_THROWS_AS(make_bin_grid(0, kMicrosPerHour, 0), ConfigError);
}

TEST_CASE("bin widths differ by at most one microsecond") {
    auto g = make_bin_grid(1234567, 9876543210, 7);
    std::int64_t min_w = g.boundaries[1] - g.boundaries[0];
    std::int64_t max_w = min_w;
    for (std::size_t i = 1; i + 1 < g.boundaries.size(); ++i) {
        auto w = g.boundaries[i + 1] - g.boundaries[i];
        min_w = std::min(min_w, w);
        max_w = std::max(max_w, w);
    }
    CHECK(max_w - min_w <= 1);
}

TEST_CASE("bin_of clamps and closes the last bin") {
    auto g = make_bin_grid(9 * kMicrosPerHour, 18 * kMicrosPerHour, 3);
    CHECK(g.bin_of(9 * kMicrosPerHour) == 1);
    CHECK(g.bin_of(12 * kMicrosPerHour) == 2);          // half-open boundary
    CHECK(g.bin_of(18 * kMicrosPerHour) == 3);          // closed last bin
    CHECK(g.bin_of(8 * kMicrosPerHour) == 1);           // clamped below
    CHECK(g.bin_of(23 * kMicrosPerHour) == 3);          // clamped above
}

TEST_CASE("build_partition degenerate single cell") {
    // Identical fixed clock times every day so all weekdays share one cluster.
    std::vector<Micros> arrivals;
    for (int d = 0; d < 28; ++d)
        for (int a = 0; a < 10; ++a)
            arrivals.push_back(instant_at(kDay0 + d, (8 * 2 + a) * kMicrosPerHour / 2));
    auto ds = dataset_from_arrivals(std::move(arrivals));
    auto globals = single_cluster(ds.num_days());
    auto weekdays = cluster_weekdays(ds, globals);
    REQUIRE(weekdays.num_clusters(1) == 1);
    auto [lo, hi] = determine_bounds(ds);
    auto part = build_partition(ds, globals, weekdays, make_bin_grid(lo, hi, 1));
    REQUIRE(part.raw.size() == 1);
    CHECK(part.raw.begin()->second.size() == ds.num_arrivals());
}

TEST_CASE("build_partition pools within-bin gaps") {
    std::vector<Micros> arrivals{
        instant_at(kDay0, 9 * kMicrosPerHour + 30 * 60 * kMicrosPerSecond),
        instant_at(kDay0, 10 * kMicrosPerHour + 30 * 60 * kMicrosPerSecond),
    };
    auto ds = dataset_from_arrivals(arrivals);
    auto globals = single_cluster(1);
    auto weekdays = cluster_weekdays(ds, globals);
    auto grid = make_bin_grid(9 * kMicrosPerHour, 18 * kMicrosPerHour, 3);
    auto part = build_partition(ds, globals, weekdays, grid);
    CellKey key{1, weekdays.cluster_of(1, weekday_mon1(kDay0)), 1};
    REQUIRE(part.raw.count(key) == 1);
    CHECK(part.raw.at(key).size() == 2);
    REQUIRE(part.interarrivals.count(key) == 1);
    CHECK(part.interarrivals.at(key) == std::vector<double>{3600.0});
}

TEST_CASE("partition completeness on randomized datasets") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto ds = testutil::block_dataset({20, 10}, {12.0 + static_cast<double>(seed), 4.0}, seed);
        GlobalClustering globals = single_cluster(ds.num_days());
        auto weekdays = cluster_weekdays(ds, globals);
        auto [lo, hi] = determine_bounds(ds);
        auto part = build_partition(ds, globals, weekdays, make_bin_grid(lo, hi, 3));

        std::vector<Micros> reunited;
        for (const auto& [key, ts] : part.raw)
            reunited.insert(reunited.end(), ts.begin(), ts.end());
        std::sort(reunited.begin(), reunited.end());
        CHECK(reunited == ds.flatten());
    }
}

TEST_CASE("weekday clustering invariant to arrival presentation order") {
    auto ds = weekly_dataset({30, 30, 30, 30, 30, 3, 3}, 8);
    auto arrivals = ds.flatten();
    std::reverse(arrivals.begin(), arrivals.end());
    auto rebuilt = dataset_from_arrivals(std::move(arrivals));
    auto m1 = cluster_weekdays(ds, single_cluster(ds.num_days()));
    auto m2 = cluster_weekdays(rebuilt, single_cluster(rebuilt.num_days()));
    CHECK(m1.wtc == m2.wtc);
}
