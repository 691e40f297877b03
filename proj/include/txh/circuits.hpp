#pragma once

#include <stdexcept>
#include <string>

namespace txh::circuits {

/// Reduced Planck constant in SI units (J·s).
inline constexpr double kHbarSI = 1.054571817e-34;

enum class UnitSystem { natural, si };

class PhysicalConstants {
public:
    /// Natural units (hbar = 1) are the default.
    PhysicalConstants() = default;
    explicit PhysicalConstants(double hbar);

    static PhysicalConstants natural() { return PhysicalConstants{}; }
    static PhysicalConstants si() { return PhysicalConstants{kHbarSI}; }
    static PhysicalConstants for_units(UnitSystem units);

    double hbar() const { return hbar_; }

private:
    double hbar_ = 1.0;
};

/// Lossless distributed line: inductance and capacitance per unit length.
class TransmissionLineSpec {
public:
    TransmissionLineSpec(double inductance_per_length, double capacitance_per_length);

    double inductance_per_length() const { return l_; }
    double capacitance_per_length() const { return c_; }

    // Derived quantities are computed on demand.
    double impedance() const;   // Z_T = sqrt(L_T / C_T)
    double velocity() const;    // v = 1 / sqrt(L_T C_T)
    double resistance() const;  // R seen by an endpoint; equals Z_T

    bool operator==(const TransmissionLineSpec&) const = default;

private:
    double l_;
    double c_;
};

/// Lumped LC element terminating a line.
class EndpointLCSpec {
public:
    EndpointLCSpec(double inductance, double capacitance);

    double inductance() const { return l_; }
    double capacitance() const { return c_; }
    double resonance() const;  // omega_0 = 1 / sqrt(L C)

    bool operator==(const EndpointLCSpec&) const = default;

private:
    double l_;
    double c_;
};

struct LineQuantities {
    double impedance;
    double velocity;
    double resistance;
};

LineQuantities line_quantities(const TransmissionLineSpec& line);

/// Linear dispersion omega_k = v k. Throws std::invalid_argument for k < 0.
double dispersion(const TransmissionLineSpec& line, double k);

/// Dimensionless Q-value (L/R) omega_0 of an endpoint driven by a line.
double q_factor(const EndpointLCSpec& endpoint, const TransmissionLineSpec& line);

}  // namespace txh::circuits
