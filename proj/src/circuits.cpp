#include "txh/circuits.hpp"

#include <cmath>

namespace txh::circuits {

namespace {

void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument(std::string(what) + " must be finite and > 0, got " +
                                    std::to_string(value));
    }
}

}  // namespace

PhysicalConstants::PhysicalConstants(double hbar) : hbar_(hbar) {
    require_positive(hbar, "hbar");
}

PhysicalConstants PhysicalConstants::for_units(UnitSystem units) {
    return units == UnitSystem::si ? si() : natural();
}

TransmissionLineSpec::TransmissionLineSpec(double inductance_per_length,
                                           double capacitance_per_length)
    : l_(inductance_per_length), c_(capacitance_per_length) {
    require_positive(l_, "line inductance per length");
    require_positive(c_, "line capacitance per length");
}

double TransmissionLineSpec::impedance() const { return std::sqrt(l_ / c_); }

double TransmissionLineSpec::velocity() const { return 1.0 / std::sqrt(l_ * c_); }

double TransmissionLineSpec::resistance() const { return impedance(); }

EndpointLCSpec::EndpointLCSpec(double inductance, double capacitance)
    : l_(inductance), c_(capacitance) {
    require_positive(l_, "endpoint inductance");
    require_positive(c_, "endpoint capacitance");
}

double EndpointLCSpec::resonance() const { return 1.0 / std::sqrt(l_ * c_); }

LineQuantities line_quantities(const TransmissionLineSpec& line) {
    return {line.impedance(), line.velocity(), line.resistance()};
}

double dispersion(const TransmissionLineSpec& line, double k) {
    if (!(k >= 0.0)) {
        throw std::invalid_argument("dispersion: wavenumber must be >= 0, got " + std::to_string(k));
    }
    return line.velocity() * k;
}

double q_factor(const EndpointLCSpec& endpoint, const TransmissionLineSpec& line) {
    // sqrt(L/C) * sqrt(C_T/L_T), written as one root of a ratio so that
    // common rescaling of all four values cancels before rounding.
    return std::sqrt((endpoint.inductance() * line.capacitance_per_length()) /
                     (endpoint.capacitance() * line.inductance_per_length()));
}

}  // namespace txh::circuits
