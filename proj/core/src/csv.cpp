#include "atkde/csv.hpp"

#include "atkde/errors.hpp"

namespace atkde {

CsvReader::CsvReader(const std::filesystem::path& path) : in_(path, std::ios::binary) {
    if (!in_) throw ConfigError("cannot open file: " + path.string());
}

bool CsvReader::next(std::vector<std::string>& fields) {
    fields.clear();
    if (in_.peek() == std::ifstream::traits_type::eof()) return false;
    record_line_ = current_line_;

    std::string field;
    bool in_quotes = false;
    bool saw_any = false;
    int c;
    while ((c = in_.get()) != std::ifstream::traits_type::eof()) {
        saw_any = true;
        char ch = static_cast<char>(c);
        if (in_quotes) {
            if (ch == '"') {
                if (in_.peek() == '"') {
                    field.push_back('"');
                    in_.get();
                } else {
                    in_quotes = false;
                }
            } else {
                if (ch == '\n') ++current_line_;
                field.push_back(ch);
            }
        } else if (ch == '"') {
            in_quotes = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (ch == '\n') {
            ++current_line_;
            break;
        } else if (ch != '\r') {
            field.push_back(ch);
        }
    }
    if (!saw_any) return false;
    fields.push_back(std::move(field));
    return true;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

}  // namespace atkde
