#include "atkde/eventlog.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include "atkde/csv.hpp"
#include "atkde/errors.hpp"

namespace atkde {

std::size_t ArrivalDataset::num_arrivals() const {
    std::size_t n = 0;
    for (const auto& d : days) n += d.timestamps.size();
    return n;
}

std::vector<Micros> ArrivalDataset::flatten() const {
    std::vector<Micros> out;
    out.reserve(num_arrivals());
    for (const auto& d : days) out.insert(out.end(), d.timestamps.begin(), d.timestamps.end());
    return out;
}

std::vector<EventRecord> parse_event_log(const std::filesystem::path& path,
                                         const ColumnMap& columns) {
    if (!std::filesystem::exists(path)) throw ConfigError("input file not found: " + path.string());
    CsvReader reader(path);
    std::vector<std::string> fields;
    if (!reader.next(fields)) throw ConfigError("empty file (no header): " + path.string());

    auto find_col = [&](const std::string& name) -> std::size_t {
        auto it = std::find(fields.begin(), fields.end(), name);
        if (it == fields.end())
            throw ConfigError("column '" + name + "' not found in " + path.string());
        return static_cast<std::size_t>(it - fields.begin());
    };
    const std::size_t case_idx = find_col(columns.case_col);
    const std::size_t time_idx = find_col(columns.time_col);
    std::size_t activity_idx = SIZE_MAX;
    if (!columns.activity_col.empty()) activity_idx = find_col(columns.activity_col);

    std::vector<EventRecord> records;
    while (reader.next(fields)) {
        if (fields.size() == 1 && fields[0].empty()) continue;  // blank trailing line
        if (fields.size() <= std::max(case_idx, time_idx))
            throw ParseError("line " + std::to_string(reader.line()) + ": too few columns");
        EventRecord rec;
        rec.case_id = fields[case_idx];
        if (rec.case_id.empty())
            throw ParseError("line " + std::to_string(reader.line()) + ": empty case id");
        try {
            rec.timestamp = parse_iso8601(fields[time_idx]);
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(reader.line()) + ": " + e.what());
        }
        if (activity_idx != SIZE_MAX && activity_idx < fields.size())
            rec.activity = fields[activity_idx];
        records.push_back(std::move(rec));
    }
    return records;
}

ArrivalDataset dataset_from_arrivals(std::vector<Micros> arrivals) {
    ArrivalDataset ds;
    if (arrivals.empty()) return ds;
    std::sort(arrivals.begin(), arrivals.end());
    const CivilDay first = day_of(arrivals.front());
    const CivilDay last = day_of(arrivals.back());
    ds.days.resize(static_cast<std::size_t>(last - first + 1));
    for (std::size_t i = 0; i < ds.days.size(); ++i)
        ds.days[i].date = first + static_cast<CivilDay>(i);
    for (Micros t : arrivals)
        ds.days[static_cast<std::size_t>(day_of(t) - first)].timestamps.push_back(t);
    return ds;
}

ArrivalDataset derive_arrivals(std::span<const EventRecord> records) {
    if (records.empty()) throw DataError("no event records to derive arrivals from");
    std::unordered_map<std::string, Micros> earliest;
    earliest.reserve(records.size());
    for (const auto& rec : records) {
        auto [it, inserted] = earliest.try_emplace(rec.case_id, rec.timestamp);
        if (!inserted && rec.timestamp < it->second) it->second = rec.timestamp;
    }
    std::vector<Micros> arrivals;
    arrivals.reserve(earliest.size());
    for (const auto& [id, t] : earliest) arrivals.push_back(t);
    return dataset_from_arrivals(std::move(arrivals));
}

std::pair<ArrivalDataset, ArrivalDataset> temporal_split(const ArrivalDataset& dataset,
                                                         const SplitSpec& spec) {
    if (spec.train_fraction <= 0.0 || spec.train_fraction >= 1.0)
        throw ConfigError("train fraction must lie in (0, 1)");
    std::vector<Micros> arrivals = dataset.flatten();
    if (arrivals.size() < 2) throw DataError("cannot split a dataset with fewer than 2 arrivals");

    auto n_train = static_cast<std::size_t>(
        std::ceil(spec.train_fraction * static_cast<double>(arrivals.size())));
    n_train = std::min(n_train, arrivals.size() - 1);
    n_train = std::max<std::size_t>(n_train, 1);

    std::vector<Micros> train(arrivals.begin(), arrivals.begin() + static_cast<long>(n_train));
    std::vector<Micros> test(arrivals.begin() + static_cast<long>(n_train), arrivals.end());
    return {dataset_from_arrivals(std::move(train)), dataset_from_arrivals(std::move(test))};
}

void write_arrivals_csv(const ArrivalDataset& dataset, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file: " + path.string());
    out << "date,timestamp\n";
    for (const auto& day : dataset.days)
        for (Micros t : day.timestamps)
            out << format_date(day.date) << ',' << format_iso8601(t) << '\n';
}

ArrivalDataset read_arrivals_csv(const std::filesystem::path& path) {
    CsvReader reader(path);
    std::vector<std::string> fields;
    if (!reader.next(fields)) throw ConfigError("empty file (no header): " + path.string());
    if (fields.size() < 2 || fields[0] != "date" || fields[1] != "timestamp")
        throw ParseError("expected header 'date,timestamp' in " + path.string());
    std::vector<Micros> arrivals;
    while (reader.next(fields)) {
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (fields.size() < 2)
            throw ParseError("line " + std::to_string(reader.line()) + ": too few columns");
        try {
            arrivals.push_back(parse_iso8601(fields[1]));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(reader.line()) + ": " + e.what());
        }
    }
    return dataset_from_arrivals(std::move(arrivals));
}

}  // namespace atkde
