#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "atkde/time.hpp"

namespace atkde {

struct EventRecord {
    std::string case_id;
    std::string activity;  // may be empty
    Micros timestamp = 0;
};

/// All arrivals on one calendar day, sorted non-decreasing.
struct DayArrivals {
    CivilDay date = 0;
    std::vector<Micros> timestamps;

    int weekday() const { return weekday_mon1(date); }
};

/// Ordered per-day arrival sequences covering every calendar day from the
/// first to the last arrival; interior days with no arrivals are present
/// and empty.
struct ArrivalDataset {
    std::vector<DayArrivals> days;

    std::size_t num_days() const { return days.size(); }
    std::size_t num_arrivals() const;
    bool empty() const { return num_arrivals() == 0; }

    /// All arrival instants in ascending order.
    std::vector<Micros> flatten() const;
};

struct ColumnMap {
    std::string case_col = "case_id";
    std::string time_col = "timestamp";
    std::string activity_col;  // optional
};

struct SplitSpec {
    double train_fraction = 0.8;
};

/// Parses a CSV event log with a header row. Timestamps are normalized to
/// UTC. Throws ConfigError for missing columns, ParseError (with the line
/// number) for malformed rows.
std::vector<EventRecord> parse_event_log(const std::filesystem::path& path,
                                         const ColumnMap& columns = {});

/// One arrival per distinct case (its earliest event timestamp), grouped
/// into per-day sequences. Throws DataError when `records` is empty.
ArrivalDataset derive_arrivals(std::span<const EventRecord> records);

/// Builds a dataset from raw arrival instants (not necessarily sorted).
ArrivalDataset dataset_from_arrivals(std::vector<Micros> arrivals);

/// Temporal hold-out split: the first ceil(train_fraction * total) arrivals
/// (ordered by timestamp) form the train set. Throws DataError for fewer
/// than 2 arrivals, ConfigError for a fraction outside (0, 1).
std::pair<ArrivalDataset, ArrivalDataset> temporal_split(const ArrivalDataset& dataset,
                                                         const SplitSpec& spec);

/// Canonical arrival file: CSV `date,timestamp`, ascending.
void write_arrivals_csv(const ArrivalDataset& dataset, const std::filesystem::path& path);
ArrivalDataset read_arrivals_csv(const std::filesystem::path& path);

}  // namespace atkde
