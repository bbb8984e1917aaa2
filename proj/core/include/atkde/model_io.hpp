#pragma once

#include <filesystem>
#include <variant>

#include "atkde/baselines.hpp"
#include "atkde/pipeline.hpp"

namespace atkde {

/// Any model the CLI can fit and generate from.
using AnyModel = std::variant<AtkdeModel, MeanModel, BestDistModel>;

/// JSON model files. Inter-arrival samples are stored as integer
/// microseconds so a save/load round trip is bit-exact.
void save_model(const AnyModel& model, const std::filesystem::path& path);
AnyModel load_model(const std::filesystem::path& path);

/// Diagnostics JSON: daily counts, smoothed series, change points, labels,
/// weekday mappings, per-cell sample counts, factor grid scores.
void save_diagnostics(const AtkdeModel& model, const std::filesystem::path& path);

/// Writes `content` atomically (temp file in the same directory + rename).
void atomic_write(const std::filesystem::path& path, const std::string& content);

}  // namespace atkde
