#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace atkde {

/// Minimal RFC-4180 CSV reader: quoted fields, embedded commas/quotes/newlines,
/// CRLF line endings. Tracks 1-based line numbers for error reporting.
class CsvReader {
public:
    explicit CsvReader(const std::filesystem::path& path);

    /// Reads the next record into `fields`. Returns false at end of input.
    bool next(std::vector<std::string>& fields);

    /// Line number where the most recently returned record started.
    std::size_t line() const { return record_line_; }

private:
    std::ifstream in_;
    std::size_t current_line_ = 1;
    std::size_t record_line_ = 1;
};

/// Quotes a field if it contains a comma, quote, or newline.
std::string csv_escape(const std::string& field);

}  // namespace atkde
