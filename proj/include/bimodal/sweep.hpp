#pragma once

#include <cstdio>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace bimodal {

/// One table cell; doubles are always rendered with 17 significant digits so
/// identical runs serialize byte-for-byte.
using Cell = std::variant<double, long long, std::string>;

inline std::string format_cell(const Cell& c) {
    if (std::holds_alternative<double>(c)) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(c));
        return buf;
    }
    if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
    return std::get<std::string>(c);
}

/// Tabular sweep output plus the resolved configuration that produced it.
/// The header block is echoed verbatim into every serialization.
struct SweepResult {
    std::map<std::string, std::string> header;  // config echo: key -> value
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

/// CSV with a '#'-prefixed header block, '.' decimal separator, LF endings.
inline std::string to_csv(const SweepResult& r) {
    std::string out;
    for (const auto& [k, v] : r.header) out += "# " + k + " = " + v + "\n";
    for (size_t i = 0; i < r.columns.size(); ++i)
        out += (i ? "," : "") + r.columns[i];
    out += "\n";
    for (const auto& row : r.rows) {
        for (size_t i = 0; i < row.size(); ++i)
            out += (i ? "," : "") + format_cell(row[i]);
        out += "\n";
    }
    return out;
}

/// JSON mirror of the CSV: {"header": {...}, "columns": [...], "rows": [[...]]}.
/// Numbers are serialized through the same 17-digit formatter.
inline std::string to_json(const SweepResult& r) {
    auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') q += '\\';
            q += c;
        }
        return q + "\"";
    };
    std::string out = "{\n  \"header\": {";
    bool first = true;
    for (const auto& [k, v] : r.header) {
        out += (first ? "\n" : ",\n");
        out += "    " + quote(k) + ": " + quote(v);
        first = false;
    }
    out += "\n  },\n  \"columns\": [";
    for (size_t i = 0; i < r.columns.size(); ++i)
        out += (i ? ", " : "") + quote(r.columns[i]);
    out += "],\n  \"rows\": [";
    for (size_t j = 0; j < r.rows.size(); ++j) {
        out += (j ? ",\n    " : "\n    ");
        out += "[";
        for (size_t i = 0; i < r.rows[j].size(); ++i) {
            const Cell& c = r.rows[j][i];
            out += (i ? ", " : "");
            if (std::holds_alternative<std::string>(c)) out += quote(std::get<std::string>(c));
            else out += format_cell(c);
        }
        out += "]";
    }
    out += "\n  ]\n}\n";
    return out;
}

}  // namespace bimodal
