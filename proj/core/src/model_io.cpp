#include "atkde/model_io.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "atkde/errors.hpp"

namespace atkde {

using nlohmann::json;

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write file: " + tmp.string());
        out << content;
        if (!out) throw ConfigError("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

namespace {

json calendar_to_json(const CalendarAugmentation& cal) {
    return {{"work_probability", cal.work_probability},
            {"first_tod_pool", cal.first_tod_pool},
            {"last_tod_pool", cal.last_tod_pool}};
}

CalendarAugmentation calendar_from_json(const json& j) {
    CalendarAugmentation cal;
    auto probs = j.at("work_probability").get<std::vector<double>>();
    if (probs.size() != 7) throw ParseError("calendar must cover 7 weekdays");
    std::copy(probs.begin(), probs.end(), cal.work_probability.begin());
    cal.first_tod_pool = j.at("first_tod_pool").get<std::vector<std::int64_t>>();
    cal.last_tod_pool = j.at("last_tod_pool").get<std::vector<std::int64_t>>();
    return cal;
}

std::vector<std::int64_t> seconds_to_micros(const std::vector<double>& seconds) {
    std::vector<std::int64_t> out;
    out.reserve(seconds.size());
    for (double s : seconds) out.push_back(std::llround(s * kMicrosPerSecond));
    return out;
}

std::vector<double> micros_to_seconds(const std::vector<std::int64_t>& micros) {
    std::vector<double> out;
    out.reserve(micros.size());
    for (std::int64_t us : micros)
        out.push_back(static_cast<double>(us) / static_cast<double>(kMicrosPerSecond));
    return out;
}

json atkde_to_json(const AtkdeModel& model) {
    json j;
    j["type"] = "atkde";
    j["window"] = model.window;
    j["bins"] = model.bins;
    j["lower_time"] = model.lower_time;
    j["upper_time"] = model.upper_time;
    j["mean_daily_arrivals"] = model.mean_daily_arrivals;
    j["default_start_date"] = model.default_start_date;
    j["default_horizon_days"] = model.default_horizon_days;

    json globals;
    globals["change_points"] = model.globals.change_points;
    json segs = json::array();
    for (const auto& s : model.globals.segments) segs.push_back({s.start_day, s.end_day});
    globals["segments"] = segs;
    globals["labels"] = model.globals.labels;
    globals["chosen_z"] = model.globals.chosen_z;
    globals["fallback"] = model.globals.fallback;
    j["globals"] = globals;

    json wtc = json::array();
    for (const auto& row : model.weekdays.wtc) wtc.push_back(row);
    j["weekday_clusters"] = wtc;

    json cells = json::array();
    for (const auto& [key, kde] : model.ensemble.models) {
        cells.push_back({{"j", key.global},
                         {"k", key.weekday},
                         {"l", key.bin},
                         {"bandwidth", kde.bandwidth},
                         {"samples_us", seconds_to_micros(kde.samples)}});
    }
    j["ensemble"] = {{"bandwidth_factor", model.ensemble.bandwidth_factor}, {"cells", cells}};

    json scores = json::array();
    for (const auto& fs : model.diagnostics.factor_scores)
        scores.push_back({{"factor", fs.factor},
                          {"mean_sqrt_cadd", fs.mean_sqrt_cadd},
                          {"std_error", fs.std_error}});
    j["diagnostics"] = {{"factor_scores", scores},
                        {"tuning_note", model.diagnostics.tuning_note}};
    return j;
}

AtkdeModel atkde_from_json(const json& j) {
    AtkdeModel model;
    model.window = j.at("window").get<int>();
    model.bins = j.at("bins").get<int>();
    model.lower_time = j.at("lower_time").get<std::int64_t>();
    model.upper_time = j.at("upper_time").get<std::int64_t>();
    model.mean_daily_arrivals = j.at("mean_daily_arrivals").get<double>();
    model.default_start_date = j.at("default_start_date").get<CivilDay>();
    model.default_horizon_days = j.at("default_horizon_days").get<std::int64_t>();

    const json& globals = j.at("globals");
    model.globals.change_points = globals.at("change_points").get<std::vector<std::size_t>>();
    for (const auto& s : globals.at("segments"))
        model.globals.segments.push_back({s.at(0).get<std::size_t>(), s.at(1).get<std::size_t>()});
    model.globals.labels = globals.at("labels").get<std::vector<int>>();
    model.globals.chosen_z = globals.at("chosen_z").get<double>();
    model.globals.fallback = globals.at("fallback").get<bool>();

    for (const auto& row : j.at("weekday_clusters")) {
        auto values = row.get<std::vector<int>>();
        if (values.size() != 7) throw ParseError("weekday cluster row must have 7 entries");
        std::array<int, 7> arr{};
        std::copy(values.begin(), values.end(), arr.begin());
        model.weekdays.wtc.push_back(arr);
    }

    const json& ensemble = j.at("ensemble");
    model.ensemble.bandwidth_factor = ensemble.at("bandwidth_factor").get<double>();
    for (const auto& cell : ensemble.at("cells")) {
        CellKey key{cell.at("j").get<int>(), cell.at("k").get<int>(), cell.at("l").get<int>()};
        KdeModel kde;
        kde.bandwidth = cell.at("bandwidth").get<double>();
        kde.samples = micros_to_seconds(cell.at("samples_us").get<std::vector<std::int64_t>>());
        if (kde.samples.empty()) throw ParseError("model cell has no samples");
        model.ensemble.models.emplace(key, std::move(kde));
    }

    if (j.contains("diagnostics")) {
        for (const auto& fs : j.at("diagnostics").at("factor_scores"))
            model.diagnostics.factor_scores.push_back(
                {fs.at("factor").get<double>(), fs.at("mean_sqrt_cadd").get<double>(),
                 fs.value("std_error", 0.0)});
        model.diagnostics.tuning_note = j.at("diagnostics").value("tuning_note", "");
    }
    return model;
}

}  // namespace

void save_model(const AnyModel& model, const std::filesystem::path& path) {
    json j;
    if (const auto* atkde = std::get_if<AtkdeModel>(&model)) {
        j = atkde_to_json(*atkde);
    } else if (const auto* mean = std::get_if<MeanModel>(&model)) {
        j["type"] = "mean";
        j["mean_seconds"] = mean->mean_seconds;
        j["calendar"] = calendar_to_json(mean->calendar);
    } else {
        const auto& best = std::get<BestDistModel>(model);
        j["type"] = "best_distribution";
        j["family"] = family_name(best.dist.family);
        j["params"] = best.dist.params;
        j["ks"] = best.dist.ks;
        j["calendar"] = calendar_to_json(best.calendar);
    }
    atomic_write(path, j.dump(2) + "\n");
}

AnyModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open model file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("invalid model file " + path.string() + ": " + e.what());
    }
    try {
        const auto type = j.at("type").get<std::string>();
        if (type == "atkde") return atkde_from_json(j);
        if (type == "mean") {
            MeanModel model;
            model.mean_seconds = j.at("mean_seconds").get<double>();
            model.calendar = calendar_from_json(j.at("calendar"));
            return model;
        }
        if (type == "best_distribution") {
            BestDistModel model;
            model.dist.family = family_from_name(j.at("family").get<std::string>());
            model.dist.params = j.at("params").get<std::vector<double>>();
            model.dist.ks = j.at("ks").get<double>();
            model.calendar = calendar_from_json(j.at("calendar"));
            return model;
        }
        throw ParseError("unknown model type: " + type);
    } catch (const json::exception& e) {
        throw ParseError("invalid model file " + path.string() + ": " + e.what());
    }
}

void save_diagnostics(const AtkdeModel& model, const std::filesystem::path& path) {
    json j;
    j["daily_counts"] = model.diagnostics.daily_counts;
    j["moving_averages"] = model.diagnostics.moving_averages;
    j["diff_series"] = model.diagnostics.diff_series;
    j["chosen_z"] = model.globals.chosen_z;
    j["fallback"] = model.globals.fallback;
    j["change_points"] = model.globals.change_points;
    j["labels"] = model.globals.labels;
    json wtc = json::array();
    for (const auto& row : model.weekdays.wtc) wtc.push_back(row);
    j["weekday_clusters"] = wtc;
    json cells = json::array();
    for (const auto& [key, kde] : model.ensemble.models)
        cells.push_back({{"j", key.global},
                         {"k", key.weekday},
                         {"l", key.bin},
                         {"n", kde.samples.size()},
                         {"bandwidth", kde.bandwidth}});
    j["cells"] = cells;
    j["bandwidth_factor"] = model.ensemble.bandwidth_factor;
    json scores = json::array();
    for (const auto& fs : model.diagnostics.factor_scores)
        scores.push_back({{"factor", fs.factor},
                          {"mean_sqrt_cadd", fs.mean_sqrt_cadd},
                          {"std_error", fs.std_error}});
    j["factor_scores"] = scores;
    if (!model.diagnostics.tuning_note.empty()) j["tuning_note"] = model.diagnostics.tuning_note;
    atomic_write(path, j.dump(2) + "\n");
}

}  // namespace atkde
