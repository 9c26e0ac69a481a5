#include "coinwalk/table.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

namespace coinwalk {

namespace {

double parse_double(std::string_view s) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) throw TableFormatError("not a number: '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

void check_text(std::string_view s, std::string_view forbidden) {
    if (s.find_first_of(forbidden) != std::string_view::npos)
        throw TableFormatError("CSV field '" + std::string(s) + "' contains a reserved character");
}

}  // namespace

std::optional<std::string> Table::find_meta(std::string_view key) const {
    for (const auto& [k, v] : meta)
        if (k == key) return v;
    return std::nullopt;
}

std::string format_number(double v, int digits) {
    if (!std::isfinite(v)) throw TableFormatError("cannot encode non-finite value");
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    return fmt::format("{:.{}g}", v, digits);
}

std::string to_csv(const Table& t) {
    std::string out;
    for (const auto& [k, v] : t.meta) {
        check_text(k, "=\n\r");
        check_text(v, "\n\r");
        out += "# " + k + "=" + v + "\n";
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        check_text(t.columns[i], ",\n\r#");
        out += (i ? "," : "") + t.columns[i];
    }
    out += "\n";
    for (const auto& row : t.rows) {
        if (row.size() != t.columns.size()) throw TableFormatError("row width does not match header");
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_number(row[i], kCsvDigits);
        out += "\n";
    }
    return out;
}

std::string to_json(const Table& t) {
    // Written by hand so numbers carry a fixed 17 significant digits.
    auto quote = [](const std::string& s) { return nlohmann::json(s).dump(); };
    std::string out = "{\n  \"meta\": [";
    for (std::size_t i = 0; i < t.meta.size(); ++i)
        out += (i ? ",\n    " : "\n    ") + ("[" + quote(t.meta[i].first) + ", " + quote(t.meta[i].second) + "]");
    out += t.meta.empty() ? "],\n" : "\n  ],\n";
    out += "  \"columns\": [";
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? ", " : "") + quote(t.columns[i]);
    out += "],\n  \"data\": [";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        if (row.size() != t.columns.size()) throw TableFormatError("row width does not match header");
        out += r ? ",\n    [" : "\n    [";
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? ", " : "") + format_number(row[i], kJsonDigits);
        out += "]";
    }
    out += t.rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

std::string encode(const Table& t, Format format) { return format == Format::csv ? to_csv(t) : to_json(t); }

Table parse_csv(std::string_view text) {
    Table t;
    bool header_seen = false;
    for (auto line : split(text, '\n')) {
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!header_seen && line.starts_with("# ")) {
            line.remove_prefix(2);
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) throw TableFormatError("metadata line without '='");
            t.add_meta(std::string(line.substr(0, eq)), std::string(line.substr(eq + 1)));
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            if (!line.empty())
                for (auto c : split(line, ',')) t.columns.emplace_back(c);
            continue;
        }
        if (line.empty()) continue;
        std::vector<double> row;
        for (auto cell : split(line, ',')) row.push_back(parse_double(cell));
        if (row.size() != t.columns.size()) throw TableFormatError("row width does not match header");
        t.rows.push_back(std::move(row));
    }
    if (!header_seen) throw TableFormatError("CSV has no header line");
    return t;
}

Table parse_json(std::string_view text) {
    Table t;
    try {
        const auto doc = nlohmann::json::parse(text);
        for (const auto& kv : doc.at("meta")) t.add_meta(kv.at(0).get<std::string>(), kv.at(1).get<std::string>());
        for (const auto& c : doc.at("columns")) t.columns.push_back(c.get<std::string>());
        for (const auto& r : doc.at("data")) {
            std::vector<double> row;
            for (const auto& v : r) row.push_back(v.get<double>());
            if (row.size() != t.columns.size()) throw TableFormatError("row width does not match header");
            t.rows.push_back(std::move(row));
        }
    } catch (const nlohmann::json::exception& e) {
        throw TableFormatError(std::string("malformed JSON table: ") + e.what());
    }
    return t;
}

Table decode(std::string_view text, Format format) {
    return format == Format::csv ? parse_csv(text) : parse_json(text);
}

}  // namespace coinwalk
