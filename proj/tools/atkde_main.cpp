// AT-KDE command line: ingest event logs, fit arrival models, generate
// synthetic arrivals, evaluate them, and run seeded benchmarks.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "atkde/baselines.hpp"
#include "atkde/csv.hpp"
#include "atkde/errors.hpp"
#include "atkde/evaluate.hpp"
#include "atkde/eventlog.hpp"
#include "atkde/model_io.hpp"
#include "atkde/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace atkde;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitEval = 3;
constexpr int kExitInternal = 4;

struct RunConfig {
    int window = 7;
    int bins = 3;
    int kmax = 6;
    double train_fraction = 0.8;
    std::vector<double> sensitivity = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    std::vector<double> factor_grid = {0.25, 0.5, 1.0, 2.0,  4.0,  8.0,
                                       16.0, 32.0, 64.0, 128.0, 200.0};
    double dbscan_eps = 2.0;
    int dbscan_min_samples = 1;
    int seeds_per_candidate = 3;
    double silhouette_threshold = 0.25;
    std::uint64_t seed = 1;
    std::optional<std::int64_t> horizon_days;
    std::optional<std::int64_t> num_cases;
    std::string start;  // ISO date or timestamp; empty = model default

    AtkdeParams params() const {
        AtkdeParams p;
        p.divide.window = window;
        p.divide.sensitivity = sensitivity;
        p.divide.max_clusters = kmax;
        p.divide.dbscan_eps = dbscan_eps;
        p.divide.dbscan_min_samples = static_cast<std::size_t>(dbscan_min_samples);
        p.bins = bins;
        p.search.factor_grid = factor_grid;
        p.search.seeds_per_candidate = seeds_per_candidate;
        p.search.base_seed = seed;
        p.silhouette_threshold = silhouette_threshold;
        return p;
    }
};

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("invalid number in list: '" + item + "'");
        }
    }
    if (out.empty()) throw ConfigError("empty numeric list");
    return out;
}

/// Flat `key = value` config file; '#' starts a comment.
void apply_config_file(const fs::path& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "window") cfg.window = std::stoi(value);
            else if (key == "bins") cfg.bins = std::stoi(value);
            else if (key == "kmax") cfg.kmax = std::stoi(value);
            else if (key == "train_fraction") cfg.train_fraction = std::stod(value);
            else if (key == "sensitivity") cfg.sensitivity = parse_double_list(value);
            else if (key == "factor_grid") cfg.factor_grid = parse_double_list(value);
            else if (key == "dbscan_eps") cfg.dbscan_eps = std::stod(value);
            else if (key == "dbscan_min_samples") cfg.dbscan_min_samples = std::stoi(value);
            else if (key == "seeds_per_candidate") cfg.seeds_per_candidate = std::stoi(value);
            else if (key == "silhouette_threshold") cfg.silhouette_threshold = std::stod(value);
            else if (key == "seed") cfg.seed = std::stoull(value);
            else if (key == "horizon_days") cfg.horizon_days = std::stoll(value);
            else if (key == "num_cases") cfg.num_cases = std::stoll(value);
            else if (key == "start") cfg.start = value;
            else throw ConfigError("unknown config key: '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw ConfigError("config line " + std::to_string(lineno) + ": bad value for " + key);
        }
    }
}

/// Reads arrivals from either the canonical `date,timestamp` format or an
/// event log (one arrival per distinct case).
ArrivalDataset load_arrivals(const fs::path& path, const ColumnMap& columns) {
    if (!fs::exists(path)) throw ConfigError("input file not found: " + path.string());
    CsvReader probe(path);
    std::vector<std::string> header;
    if (!probe.next(header)) throw ConfigError("empty file (no header): " + path.string());
    if (header.size() >= 2 && header[0] == "date" && header[1] == "timestamp")
        return read_arrivals_csv(path);
    auto records = parse_event_log(path, columns);
    if (records.empty()) throw DataError("event log has no rows: " + path.string());
    return derive_arrivals(records);
}

void write_generated_csv(const GeneratedArrivals& generated, const fs::path& path) {
    std::string content = "case_id,timestamp\n";
    std::size_t n = 0;
    for (const auto& day : generated.days)
        for (Micros t : day.timestamps)
            content += "sim_" + std::to_string(n++) + "," + format_iso8601(t) + "\n";
    atomic_write(path, content);
}

GenerationConfig make_generation_config(const RunConfig& cfg, CivilDay default_start,
                                        std::int64_t default_horizon) {
    GenerationConfig gen;
    gen.seed = cfg.seed;
    gen.start_date = default_start;
    if (!cfg.start.empty()) {
        gen.start_date = cfg.start.size() == 10 ? parse_date(cfg.start)
                                                : day_of(parse_iso8601(cfg.start));
    }
    if (cfg.num_cases) {
        gen.num_cases = cfg.num_cases;
    } else {
        gen.horizon_days = cfg.horizon_days ? *cfg.horizon_days : default_horizon;
    }
    return gen;
}

GeneratedArrivals generate_any(const AnyModel& model, const GenerationConfig& gen) {
    if (const auto* atkde_model = std::get_if<AtkdeModel>(&model))
        return generate_atkde(*atkde_model, gen);
    if (const auto* mean_model = std::get_if<MeanModel>(&model))
        return generate_baseline(*mean_model, gen);
    return generate_baseline(std::get<BestDistModel>(model), gen);
}

int cmd_ingest(const fs::path& input, const fs::path& output, const ColumnMap& columns) {
    auto records = parse_event_log(input, columns);
    if (records.empty()) throw DataError("event log has no rows: " + input.string());
    auto dataset = derive_arrivals(records);
    write_arrivals_csv(dataset, output);
    std::cout << "ingested " << records.size() << " events, " << dataset.num_arrivals()
              << " arrivals over " << dataset.num_days() << " days -> " << output.string()
              << "\n";
    return kExitOk;
}

int cmd_fit(const RunConfig& cfg, const fs::path& input, const fs::path& output,
            const std::string& model_type, const fs::path& diagnostics_path,
            const ColumnMap& columns) {
    ArrivalDataset dataset;
    try {
        dataset = load_arrivals(input, columns);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("stage ingest: ") + e.what());
    }

    ArrivalDataset train, test;
    try {
        std::tie(train, test) = temporal_split(dataset, SplitSpec{cfg.train_fraction});
    } catch (const std::exception& e) {
        throw DataError(std::string("stage split: ") + e.what());
    }

    AnyModel model;
    try {
        if (model_type == "atkde") {
            AtkdeModel fitted = fit_atkde(train, cfg.params());
            fitted.default_start_date = test.days.front().date;
            fitted.default_horizon_days = static_cast<std::int64_t>(test.num_days());
            if (!diagnostics_path.empty()) save_diagnostics(fitted, diagnostics_path);
            std::cout << "fit atkde: " << fitted.globals.num_clusters() << " global cluster(s), "
                      << fitted.globals.change_points.size() << " change point(s)"
                      << (fitted.globals.fallback ? " (fallback)" : "") << ", "
                      << fitted.ensemble.models.size() << " KDE cell(s), bandwidth factor "
                      << fitted.ensemble.bandwidth_factor << "\n";
            model = std::move(fitted);
        } else if (model_type == "mean") {
            MeanModel fitted = fit_mean(train);
            std::cout << "fit mean: inter-arrival mean " << fitted.mean_seconds << " s\n";
            model = std::move(fitted);
        } else if (model_type == "best_distribution") {
            BestDistModel fitted = fit_best_distribution(train);
            std::cout << "fit best_distribution: " << family_name(fitted.dist.family)
                      << " (ks " << fitted.dist.ks << ")\n";
            model = std::move(fitted);
        } else {
            throw ConfigError("unknown model type: " + model_type);
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw DataError(std::string("stage fit: ") + e.what());
    }
    save_model(model, output);
    std::cout << "model written to " << output.string() << "\n";
    return kExitOk;
}

int cmd_generate(const RunConfig& cfg, const fs::path& model_path, const fs::path& output) {
    AnyModel model = load_model(model_path);
    CivilDay default_start = 0;
    std::int64_t default_horizon = 0;
    if (const auto* atkde_model = std::get_if<AtkdeModel>(&model)) {
        default_start = atkde_model->default_start_date;
        default_horizon = atkde_model->default_horizon_days;
    } else if (!cfg.horizon_days && !cfg.num_cases) {
        throw ConfigError("baseline models need --horizon-days or --num-cases");
    } else if (cfg.start.empty()) {
        throw ConfigError("baseline models need --start");
    }
    GenerationConfig gen = make_generation_config(cfg, default_start, default_horizon);
    auto generated = generate_any(model, gen);
    write_generated_csv(generated, output);
    std::cout << "generated " << generated.num_arrivals() << " arrivals over "
              << generated.days.size() << " day(s) starting " << format_date(gen.start_date)
              << " -> " << output.string() << "\n";
    return kExitOk;
}

std::vector<Micros> load_flat_arrivals(const fs::path& path, const ColumnMap& columns) {
    return load_arrivals(path, columns).flatten();
}

int cmd_evaluate(const fs::path& test_path, const fs::path& sim_path, const fs::path& output,
                 const ColumnMap& columns) {
    std::vector<Micros> test, sim;
    try {
        test = load_flat_arrivals(test_path, columns);
        sim = load_flat_arrivals(sim_path, columns);
    } catch (const DataError& e) {
        throw EvalError(e.what());
    }
    if (test.empty()) throw EvalError("test file has no arrivals: " + test_path.string());
    if (sim.empty()) throw EvalError("simulation file has no arrivals: " + sim_path.string());
    auto report = compute_cadd(test, sim);
    std::cout << "cadd=" << report.cadd << " sqrt_cadd=" << report.sqrt_cadd
              << " test_count=" << report.test_count << " sim_count=" << report.sim_count << "\n";
    if (!output.empty()) {
        json j = {{"cadd", report.cadd},
                  {"sqrt_cadd", report.sqrt_cadd},
                  {"test_count", report.test_count},
                  {"sim_count", report.sim_count}};
        atomic_write(output, j.dump(2) + "\n");
    }
    return kExitOk;
}

/// 7x24 hour-by-weekday arrival count matrix, one row per weekday (Mon..Sun).
void write_heatmap_csv(std::span<const Micros> arrivals, const fs::path& path) {
    std::array<std::array<long long, 24>, 7> counts{};
    for (Micros t : arrivals) {
        auto wd = static_cast<std::size_t>(weekday_mon1(day_of(t)) - 1);
        auto hour = static_cast<std::size_t>(time_of_day(t) / kMicrosPerHour);
        ++counts[wd][std::min<std::size_t>(hour, 23)];
    }
    std::string content = "weekday";
    for (int h = 0; h < 24; ++h) content += ",h" + std::to_string(h);
    content += "\n";
    for (int wd = 0; wd < 7; ++wd) {
        content += std::to_string(wd + 1);
        for (int h = 0; h < 24; ++h)
            content +=
                "," + std::to_string(counts[static_cast<std::size_t>(wd)][static_cast<std::size_t>(h)]);
        content += "\n";
    }
    atomic_write(path, content);
}

int cmd_benchmark(const RunConfig& cfg, const fs::path& input, const fs::path& output_dir,
                  int runs, const ColumnMap& columns) {
    auto dataset = load_arrivals(input, columns);
    auto [train, test] = temporal_split(dataset, SplitSpec{cfg.train_fraction});
    fs::create_directories(output_dir);

    const CivilDay start = test.days.front().date;
    const auto horizon = static_cast<std::int64_t>(test.num_days());
    auto gen_config = [&](std::uint64_t seed) {
        GenerationConfig gen;
        gen.start_date = start;
        gen.horizon_days = horizon;
        gen.seed = seed;
        return gen;
    };

    AtkdeModel atkde_model;
    MeanModel mean_model;
    BestDistModel best_model;
    std::vector<BenchmarkModelSpec> specs;
    specs.push_back({"atkde",
                     [&] {
                         atkde_model = fit_atkde(train, cfg.params());
                         atkde_model.default_start_date = start;
                         atkde_model.default_horizon_days = horizon;
                         save_model(atkde_model, output_dir / "atkde_model.json");
                     },
                     [&](std::uint64_t seed) {
                         return generate_atkde(atkde_model, gen_config(seed)).flatten();
                     }});
    specs.push_back({"mean",
                     [&] {
                         mean_model = fit_mean(train);
                         save_model(mean_model, output_dir / "mean_model.json");
                     },
                     [&](std::uint64_t seed) {
                         return generate_baseline(mean_model, gen_config(seed)).flatten();
                     }});
    specs.push_back({"best_distribution",
                     [&] {
                         best_model = fit_best_distribution(train);
                         save_model(best_model, output_dir / "best_distribution_model.json");
                     },
                     [&](std::uint64_t seed) {
                         return generate_baseline(best_model, gen_config(seed)).flatten();
                     }});

    auto test_arrivals = test.flatten();
    auto rows = benchmark_run(test_arrivals, specs, runs, cfg.seed);

    std::ostringstream table;
    table << "model,mean_sqrt_cadd,std_sqrt_cadd,fit_seconds,gen_seconds\n";
    json details = json::array();
    for (const auto& row : rows) {
        table << row.name << ',' << row.mean_sqrt_cadd << ',' << row.std_sqrt_cadd << ','
              << row.fit_seconds << ',' << row.gen_seconds << '\n';
        details.push_back({{"model", row.name},
                           {"run_scores", row.run_scores},
                           {"mean_sqrt_cadd", row.mean_sqrt_cadd},
                           {"std_sqrt_cadd", row.std_sqrt_cadd},
                           {"fit_seconds", row.fit_seconds},
                           {"gen_seconds", row.gen_seconds},
                           {"error", row.error}});
        std::cout << row.name << ": ";
        if (row.failed())
            std::cout << "FAILED (" << row.error << ")\n";
        else
            std::cout << "mean sqrt(CADD) " << row.mean_sqrt_cadd << " +/- " << row.std_sqrt_cadd
                      << "\n";
    }
    atomic_write(output_dir / "results.csv", table.str());
    atomic_write(output_dir / "details.json", details.dump(2) + "\n");

    write_heatmap_csv(test_arrivals, output_dir / "heatmap_test.csv");
    for (const auto& row : rows) {
        if (row.failed()) continue;
        for (const auto& spec : specs) {
            if (spec.name != row.name) continue;
            write_heatmap_csv(spec.generate(cfg.seed), output_dir / ("heatmap_" + row.name + ".csv"));
        }
    }
    std::cout << "benchmark results written to " << output_dir.string() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"AT-KDE dynamic case-arrival modeling"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    std::string factor_grid_text, sensitivity_text;
    ColumnMap columns;
    std::string input, output, model_path, test_path, sim_path, diagnostics_path;
    std::string model_type = "atkde";
    std::string output_dir = "benchmark_out";
    int runs = 10;
    std::int64_t horizon_days_flag = -1, num_cases_flag = -1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "flat key = value config file");
        sub->add_option("--window", cfg.window, "moving-average window in days")
            ->default_val(cfg.window);
        sub->add_option("--bins", cfg.bins, "intraday bins per day")->default_val(cfg.bins);
        sub->add_option("--kmax", cfg.kmax, "maximum number of global clusters")
            ->default_val(cfg.kmax);
        sub->add_option("--train-fraction", cfg.train_fraction,
                        "leading fraction of cases used for training")
            ->default_val(cfg.train_fraction);
        sub->add_option("--sensitivity", sensitivity_text,
                        "comma-separated change-point sensitivity grid")
            ->default_str("0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0");
        sub->add_option("--factor-grid", factor_grid_text,
                        "comma-separated bandwidth factor grid")
            ->default_str("0.25,0.5,1,2,4,8,16,32,64,128,200");
        sub->add_option("--seed", cfg.seed, "base random seed")->default_val(cfg.seed);
        sub->add_option("--horizon-days", horizon_days_flag, "simulation horizon in days")
            ->default_val(-1);
        sub->add_option("--num-cases", num_cases_flag, "simulation horizon in cases")
            ->default_val(-1);
        sub->add_option("--start", cfg.start, "simulation start date (ISO)");
        sub->add_option("--case-col", columns.case_col, "case id column name")
            ->default_val(columns.case_col);
        sub->add_option("--time-col", columns.time_col, "timestamp column name")
            ->default_val(columns.time_col);
    };

    auto* ingest = app.add_subcommand("ingest", "derive the canonical arrival CSV from an event log");
    ingest->add_option("--input", input, "event log CSV")->required();
    ingest->add_option("--output", output, "arrival CSV to write")->required();
    add_common(ingest);

    auto* fit = app.add_subcommand("fit", "fit an arrival model on the training split");
    fit->add_option("--input", input, "event log or arrival CSV")->required();
    fit->add_option("--output", output, "model JSON to write")->required();
    fit->add_option("--model-type", model_type, "atkde | mean | best_distribution")
        ->default_val(model_type);
    fit->add_option("--diagnostics", diagnostics_path, "diagnostics JSON to write");
    add_common(fit);

    auto* generate = app.add_subcommand("generate", "generate arrivals from a fitted model");
    generate->add_option("--model", model_path, "model JSON")->required();
    generate->add_option("--output", output, "arrival CSV to write")->required();
    add_common(generate);

    auto* evaluate = app.add_subcommand("evaluate", "CADD between test and simulated arrivals");
    evaluate->add_option("--test", test_path, "test arrivals CSV")->required();
    evaluate->add_option("--sim", sim_path, "simulated arrivals CSV")->required();
    evaluate->add_option("--output", output, "report JSON to write");
    add_common(evaluate);

    auto* benchmark = app.add_subcommand("benchmark", "compare AT-KDE with the static baselines");
    benchmark->add_option("--input", input, "event log or arrival CSV")->required();
    benchmark->add_option("--output-dir", output_dir, "directory for benchmark artifacts")
        ->default_val(output_dir);
    benchmark->add_option("--runs", runs, "generation runs per model")->default_val(runs);
    add_common(benchmark);

    CLI11_PARSE(app, argc, argv);
    CLI::App* sub = app.get_subcommands().front();

    try {
        // Config file first, then command-line overrides on top.
        RunConfig file_cfg;
        if (!config_path.empty()) apply_config_file(config_path, file_cfg);
        auto keep_flag = [&](const std::string& name) { return sub->count(name) > 0; };
        if (!config_path.empty()) {
            RunConfig merged = file_cfg;
            if (keep_flag("--window")) merged.window = cfg.window;
            if (keep_flag("--bins")) merged.bins = cfg.bins;
            if (keep_flag("--kmax")) merged.kmax = cfg.kmax;
            if (keep_flag("--train-fraction")) merged.train_fraction = cfg.train_fraction;
            if (keep_flag("--seed")) merged.seed = cfg.seed;
            if (keep_flag("--start") || !cfg.start.empty()) merged.start = cfg.start.empty() ? merged.start : cfg.start;
            cfg = merged;
        }
        if (!sensitivity_text.empty()) cfg.sensitivity = parse_double_list(sensitivity_text);
        if (!factor_grid_text.empty()) cfg.factor_grid = parse_double_list(factor_grid_text);
        if (horizon_days_flag >= 0) cfg.horizon_days = horizon_days_flag;
        if (num_cases_flag >= 0) cfg.num_cases = num_cases_flag;

        if (sub == ingest) return cmd_ingest(input, output, columns);
        if (sub == fit) return cmd_fit(cfg, input, output, model_type, diagnostics_path, columns);
        if (sub == generate) return cmd_generate(cfg, model_path, output);
        if (sub == evaluate) return cmd_evaluate(test_path, sim_path, output, columns);
        if (sub == benchmark) return cmd_benchmark(cfg, input, output_dir, runs, columns);
        return kExitInternal;
    } catch (const EvalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEval;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
