#include "txh/network_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace txh::io {

namespace {

constexpr double kSymmetryTol = 1e-12;

struct Entry {
    int i;
    int j;
    double value;
    int line;
};

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string at_line(int line) { return " (line " + std::to_string(line) + ")"; }

std::vector<std::string> split_fields(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

double to_double(const std::string& tok, int line) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw NetworkConfigError("not a number: '" + tok + "'" + at_line(line), line);
    }
    if (used != tok.size() || !std::isfinite(v)) {
        throw NetworkConfigError("not a finite number: '" + tok + "'" + at_line(line), line);
    }
    return v;
}

int to_index(const std::string& tok, int line) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(tok, &used);
    } catch (const std::exception&) {
        throw NetworkConfigError("not an index: '" + tok + "'" + at_line(line), line);
    }
    if (used != tok.size() || v < 1) {
        throw NetworkConfigError("indices are 1-based positive integers: '" + tok + "'" +
                                     at_line(line),
                                 line);
    }
    return static_cast<int>(v);
}

scattering::RealMatrix assemble(const std::vector<Entry>& entries, std::size_t n,
                                const std::string& name) {
    scattering::RealMatrix m = scattering::RealMatrix::Zero(n, n);
    std::map<std::pair<int, int>, Entry> seen;
    for (const auto& e : entries) {
        const auto idx = std::to_string(e.i) + "," + std::to_string(e.j);
        if (static_cast<std::size_t>(std::max(e.i, e.j)) > n) {
            throw NetworkConfigError(name + " entry (" + idx + ") exceeds the " +
                                         std::to_string(n) + " declared lines" + at_line(e.line),
                                     e.line);
        }
        if (!seen.emplace(std::make_pair(e.i, e.j), e).second) {
            throw NetworkConfigError("duplicate " + name + " entry (" + idx + ")" + at_line(e.line),
                                     e.line);
        }
    }
    for (const auto& [key, e] : seen) {
        const auto mirror = seen.find({e.j, e.i});
        if (e.i != e.j && mirror != seen.end()) {
            const double a = e.value;
            const double b = mirror->second.value;
            const double scale = std::max({1.0, std::abs(a), std::abs(b)});
            if (std::abs(a - b) > kSymmetryTol * scale) {
                const int r = std::min(e.i, e.j);
                const int c = std::max(e.i, e.j);
                throw NetworkConfigError(name + " is not symmetric at (" + std::to_string(r) +
                                             "," + std::to_string(c) + ")" + at_line(e.line),
                                         e.line);
            }
        }
        m(e.i - 1, e.j - 1) = e.value;
        m(e.j - 1, e.i - 1) = e.value;
    }
    // Average mirrored pairs so tiny accepted asymmetries do not leak through.
    for (const auto& [key, e] : seen) {
        const auto mirror = seen.find({e.j, e.i});
        if (e.i != e.j && mirror != seen.end()) {
            const double avg = 0.5 * (e.value + mirror->second.value);
            m(e.i - 1, e.j - 1) = avg;
            m(e.j - 1, e.i - 1) = avg;
        }
    }
    return m;
}

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

}  // namespace

NetworkConfig parse_network_text(const std::string& text, circuits::PhysicalConstants consts) {
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int lineno = 0;

    std::map<int, std::pair<double, double>> lines;
    std::map<int, int> line_source;
    std::vector<Entry> mutual;
    std::vector<Entry> elastance;
    bool has_mutual = false;
    bool has_elastance = false;
    std::optional<circuits::EndpointLCSpec> endpoint;
    int endpoint_line = 0;
    std::set<std::string> sections_seen;

    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') {
                throw NetworkConfigError("malformed section header" + at_line(lineno), lineno);
            }
            section = trim(s.substr(1, s.size() - 2));
            if (section != "lines" && section != "mutual_inductance" && section != "elastance" &&
                section != "endpoint") {
                throw NetworkConfigError("unknown section [" + section + "]" + at_line(lineno),
                                         lineno);
            }
            if (!sections_seen.insert(section).second) {
                throw NetworkConfigError("section [" + section + "] repeated" + at_line(lineno),
                                         lineno);
            }
            if (section == "mutual_inductance") has_mutual = true;
            if (section == "elastance") has_elastance = true;
            continue;
        }
        const auto f = split_fields(s);
        if (section.empty()) {
            throw NetworkConfigError("data before any section" + at_line(lineno), lineno);
        }
        if (section == "lines") {
            if (f.size() != 3) {
                throw NetworkConfigError("[lines] rows are 'i L_T C_T'" + at_line(lineno), lineno);
            }
            const int i = to_index(f[0], lineno);
            if (!lines.emplace(i, std::make_pair(to_double(f[1], lineno), to_double(f[2], lineno)))
                     .second) {
                throw NetworkConfigError("line " + std::to_string(i) + " declared twice" +
                                             at_line(lineno),
                                         lineno);
            }
            line_source[i] = lineno;
        } else if (section == "endpoint") {
            if (f.size() != 2 || endpoint) {
                throw NetworkConfigError("[endpoint] holds a single 'L C' row" + at_line(lineno),
                                         lineno);
            }
            try {
                endpoint.emplace(to_double(f[0], lineno), to_double(f[1], lineno));
            } catch (const NetworkConfigError&) {
                throw;
            } catch (const std::invalid_argument& e) {
                throw NetworkConfigError(std::string(e.what()) + at_line(lineno), lineno);
            }
            endpoint_line = lineno;
        } else {
            if (f.size() != 3) {
                throw NetworkConfigError("[" + section + "] rows are 'i j value'" + at_line(lineno),
                                         lineno);
            }
            Entry e{to_index(f[0], lineno), to_index(f[1], lineno), to_double(f[2], lineno), lineno};
            (section == "mutual_inductance" ? mutual : elastance).push_back(e);
        }
    }

    if (lines.empty()) throw NetworkConfigError("no [lines] section or no lines declared");
    const std::size_t n = lines.size();
    std::vector<circuits::TransmissionLineSpec> specs;
    specs.reserve(n);
    int expect = 1;
    for (const auto& [i, lc] : lines) {
        if (i != expect) {
            throw NetworkConfigError("line indices must run 1.." + std::to_string(n) +
                                         "; missing " + std::to_string(expect),
                                     line_source[i]);
        }
        ++expect;
        try {
            specs.emplace_back(lc.first, lc.second);
        } catch (const std::invalid_argument& e) {
            throw NetworkConfigError(std::string(e.what()) + at_line(line_source[i]),
                                     line_source[i]);
        }
    }

    scattering::RealMatrix lm;
    scattering::RealMatrix em;
    if (endpoint) {
        if (n != 1) {
            throw NetworkConfigError("[endpoint] applies to single-line networks only" +
                                         at_line(endpoint_line),
                                     endpoint_line);
        }
        if (has_mutual || has_elastance) {
            throw NetworkConfigError("[endpoint] cannot be combined with explicit matrices" +
                                         at_line(endpoint_line),
                                     endpoint_line);
        }
        lm = scattering::RealMatrix::Constant(1, 1, endpoint->inductance());
        em = scattering::RealMatrix::Constant(1, 1, 1.0 / endpoint->capacitance());
    } else {
        lm = assemble(mutual, n, "mutual_inductance");
        em = assemble(elastance, n, "elastance");
    }

    try {
        return NetworkConfig{scattering::JunctionSpec(std::move(specs), lm, em, consts), endpoint};
    } catch (const scattering::JunctionError& e) {
        throw NetworkConfigError(e.what());
    }
}

NetworkConfig parse_network(const std::string& path, circuits::PhysicalConstants consts) {
    std::ifstream in(path);
    if (!in) throw NetworkConfigError("cannot open network config '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_network_text(buf.str(), consts);
}

std::string emit_network(const scattering::JunctionSpec& junction) {
    std::ostringstream out;
    const std::size_t n = junction.size();
    out << "[lines]\n";
    for (std::size_t i = 0; i < n; ++i) {
        const auto& l = junction.lines()[i];
        out << i + 1 << ' ' << fmt(l.inductance_per_length()) << ' '
            << fmt(l.capacitance_per_length()) << '\n';
    }
    const auto emit_matrix = [&](const char* name, const scattering::RealMatrix& m) {
        out << '\n' << '[' << name << "]\n";
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j)
                out << i + 1 << ' ' << j + 1 << ' ' << fmt(m(i, j)) << '\n';
    };
    emit_matrix("mutual_inductance", junction.mutual_inductance());
    emit_matrix("elastance", junction.elastance());
    return out.str();
}

}  // namespace txh::io
