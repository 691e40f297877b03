#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace txh::io {

/// Empty cell, number, integer, text or boolean.
using Value = std::variant<std::monostate, double, long long, std::string, bool>;

struct Flag {
    std::string id;
    std::string message;
    std::vector<std::pair<std::string, Value>> fields;
};

struct Report {
    std::string command;
    std::string version;
    std::vector<std::pair<std::string, Value>> params;
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows;
    std::vector<Flag> flags;
    /// Metadata only; never part of the data section.
    std::optional<std::string> timestamp;

    void param(const std::string& name, Value v) { params.emplace_back(name, std::move(v)); }
};

/// 17 significant digits, '.' decimal separator, independent of locale.
std::string format_number(double v);

/// '#'-prefixed header block (tool, version, params, flags), then an
/// RFC-4180 table.
std::string to_csv(const Report& report);

/// One object with "params", "columns", "rows" and "flags".
std::string to_json(const Report& report);

/// Lines of a rendered report that carry data, i.e. everything except
/// metadata (CSV '#' lines, the JSON "meta" member).
std::string data_section(const std::string& rendered);

/// Writes via a sibling temp file and rename. Throws std::runtime_error.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace txh::io
