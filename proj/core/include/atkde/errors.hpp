#pragma once

#include <stdexcept>
#include <string>

namespace atkde {

/// Bad configuration: missing columns, invalid parameter ranges, unreadable paths.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input data (CSV rows, timestamps, model files).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Structurally valid input that violates an operation precondition
/// (empty dataset, too few arrivals to split, ...).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Evaluation-stage failure (empty histogram, arrival before origin).
struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace atkde
