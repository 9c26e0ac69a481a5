// Tabular results with a key/value metadata block, and their CSV and JSON
// encodings.
//
// CSV:   "# key=value" lines, one header line of column names, then rows
//        with 12 significant digits.
// JSON:  {"meta": [[key, value], ...], "columns": [...], "data": [[...], ...]}
//        with 17 significant digits, enough to round-trip every double.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace coinwalk {

enum class Format { csv, json };

inline constexpr int kCsvDigits = 12;
inline constexpr int kJsonDigits = 17;

struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_meta(std::string key, std::string value) { meta.emplace_back(std::move(key), std::move(value)); }
    std::optional<std::string> find_meta(std::string_view key) const;

    bool operator==(const Table&) const = default;
};

class TableFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest "%.{digits}g" rendering; integral values print without exponent or point.
std::string format_number(double v, int digits);

std::string to_csv(const Table& t);
std::string to_json(const Table& t);
std::string encode(const Table& t, Format format);

Table parse_csv(std::string_view text);
Table parse_json(std::string_view text);
Table decode(std::string_view text, Format format);

}  // namespace coinwalk
