#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "txh/circuits.hpp"
#include "txh/scattering.hpp"

namespace txh::io {

/// Config-file problem; `line` is the 1-based source line (0 if not tied to one).
class NetworkConfigError : public std::invalid_argument {
public:
    NetworkConfigError(const std::string& what, int line = 0)
        : std::invalid_argument(what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

struct NetworkConfig {
    scattering::JunctionSpec junction;
    std::optional<circuits::EndpointLCSpec> endpoint;
};

/// Sectioned key-value network description:
///
///   [lines]              rows "i L_T C_T"
///   [mutual_inductance]  rows "i j value" (lower triangle; upper accepted)
///   [elastance]          rows "i j value"
///   [endpoint]           optional "L C", single-line networks only; fills
///                        L_11 = L and E_11 = 1/C when the matrices are absent
///
/// Indices are 1-based; '#' starts a comment. Symmetric pairs that disagree
/// by more than 1e-12 (relative) are rejected.
NetworkConfig parse_network_text(const std::string& text,
                                 circuits::PhysicalConstants consts = {});
NetworkConfig parse_network(const std::string& path, circuits::PhysicalConstants consts = {});

/// Inverse of parse_network_text, 17 significant digits.
std::string emit_network(const scattering::JunctionSpec& junction);

}  // namespace txh::io
