#include "txh/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

#include <json.hpp>

namespace txh::io {

namespace {

using Json = nlohmann::ordered_json;

std::string quote_csv(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string cell_text(const Value& v) {
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(double d) const { return format_number(d); }
        std::string operator()(long long i) const { return std::to_string(i); }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
    };
    return std::visit(Visitor{}, v);
}

Json to_json_value(const Value& v) {
    struct Visitor {
        Json operator()(std::monostate) const { return nullptr; }
        Json operator()(double d) const {
            if (std::isfinite(d)) return d;
            return format_number(d);  // "inf" / "nan" rather than a silent null
        }
        Json operator()(long long i) const { return i; }
        Json operator()(const std::string& s) const { return s; }
        Json operator()(bool b) const { return b; }
    };
    return std::visit(Visitor{}, v);
}

// Header values go on a single line.
std::string one_line(std::string s) {
    for (char& ch : s)
        if (ch == '\n' || ch == '\r') ch = ' ';
    return s;
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_csv(const Report& r) {
    std::ostringstream out;
    out << "# txh " << r.version << '\n';
    out << "# command: " << r.command << '\n';
    if (r.timestamp) out << "# generated_at: " << *r.timestamp << '\n';
    for (const auto& [name, v] : r.params) out << "# param " << name << '=' << one_line(cell_text(v)) << '\n';
    for (const auto& f : r.flags) {
        out << "# flag " << f.id << ": " << one_line(f.message);
        for (const auto& [name, v] : f.fields) out << "; " << name << '=' << one_line(cell_text(v));
        out << '\n';
    }
    for (std::size_t i = 0; i < r.columns.size(); ++i) {
        if (i) out << ',';
        out << quote_csv(r.columns[i]);
    }
    out << '\n';
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << quote_csv(cell_text(row[i]));
        }
        out << '\n';
    }
    return out.str();
}

std::string to_json(const Report& r) {
    Json j;
    j["tool"] = "txh";
    j["version"] = r.version;
    j["command"] = r.command;
    if (r.timestamp) j["meta"] = Json{{"generated_at", *r.timestamp}};
    Json params = Json::array();
    for (const auto& [name, v] : r.params) params.push_back(Json{{"name", name}, {"value", to_json_value(v)}});
    j["params"] = params;
    j["columns"] = r.columns;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json obj = Json::object();
        for (std::size_t i = 0; i < row.size() && i < r.columns.size(); ++i) {
            obj[r.columns[i]] = to_json_value(row[i]);
        }
        rows.push_back(obj);
    }
    j["rows"] = rows;
    Json flags = Json::array();
    for (const auto& f : r.flags) {
        Json obj{{"id", f.id}, {"message", f.message}};
        for (const auto& [name, v] : f.fields) obj[name] = to_json_value(v);
        flags.push_back(obj);
    }
    j["flags"] = flags;
    return j.dump(2) + "\n";
}

std::string data_section(const std::string& rendered) {
    const auto first = rendered.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && rendered[first] == '{') {
        auto j = Json::parse(rendered);
        j.erase("meta");
        return j.dump();
    }
    std::istringstream in(rendered);
    std::string line;
    std::string out;
    while (std::getline(in, line)) {
        // Params and flags count as data; only the timestamp is metadata.
        if (line.rfind("# generated_at:", 0) == 0) continue;
        out += line;
        out += '\n';
    }
    return out;
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw std::runtime_error("write to '" + tmp.string() + "' failed");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw std::runtime_error("cannot move report into '" + path + "'");
    }
}

}  // namespace txh::io
