#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "txh/circuits.hpp"

namespace txh::field {

/// Wavenumber samples 0 < k_0 < ... < k_{N-1} <= cutoff.
class ModeGrid {
public:
    ModeGrid(double cutoff, std::vector<double> wavenumbers);

    /// Log-uniform grid on [cutoff * exp(log_span_min), cutoff], both ends included.
    static ModeGrid log_uniform(double cutoff, double log_span_min, std::size_t count = 512);

    double cutoff() const { return cutoff_; }
    std::span<const double> wavenumbers() const { return k_; }
    std::size_t size() const { return k_.size(); }
    double operator[](std::size_t i) const { return k_[i]; }

    /// Trapezoid weights for integrating over k on this grid.
    std::vector<double> trapezoid_weights() const;

    bool operator==(const ModeGrid&) const = default;

private:
    double cutoff_;
    std::vector<double> k_;
};

class GridMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Per-mode second moments of a zero-mean Gaussian state. Values are
/// densities: the continuum delta(k + k') factor is divided out.
class GaussianModeState {
public:
    GaussianModeState(ModeGrid grid, std::vector<double> qq, std::vector<double> pp,
                      std::vector<double> qp_sym, circuits::PhysicalConstants consts);

    const ModeGrid& grid() const { return grid_; }
    std::span<const double> qq() const { return qq_; }
    std::span<const double> pp() const { return pp_; }
    std::span<const double> qp_sym() const { return qp_; }
    double hbar() const { return consts_.hbar(); }

private:
    ModeGrid grid_;
    std::vector<double> qq_;
    std::vector<double> pp_;
    std::vector<double> qp_;
    circuits::PhysicalConstants consts_;
};

/// Accumulated squeeze exponent f(k) at scale u on a grid. Q is rescaled by
/// exp(-f) and Phi by exp(+f).
class SqueezeProfile {
public:
    SqueezeProfile(ModeGrid grid, std::vector<double> exponents, double scale = 0.0);

    static SqueezeProfile identity(const ModeGrid& grid);

    const ModeGrid& grid() const { return grid_; }
    std::span<const double> exponents() const { return f_; }
    double scale() const { return u_; }

private:
    ModeGrid grid_;
    std::vector<double> f_;
    double u_;
};

/// Vacuum cutoff frequency omega_Lambda = (Lambda / L_T) Z_T.
double cutoff_frequency(const circuits::TransmissionLineSpec& line, double cutoff);

/// Unentangled product state annihilated by the local operator built from omega_Lambda.
GaussianModeState ir_vacuum(const circuits::TransmissionLineSpec& line, const ModeGrid& grid,
                            const circuits::PhysicalConstants& consts = {});

GaussianModeState apply_squeeze(const GaussianModeState& state, const SqueezeProfile& profile);

/// qq * pp - qp_sym^2 per mode.
std::vector<double> uncertainty_products(const GaussianModeState& state);

/// Variance density of the entangler (chi / 2 hbar) Int dk (Q Phi + Phi Q), from
/// Wick's theorem on each mode, averaged over the grid. One mode of the
/// symmetric product has Var((QP+PQ)/2) = qq pp + qp^2 + hbar^2/4; dividing
/// by the vacuum value hbar^2/2 fixes the delta(0) normalisation so the
/// free-line vacuum returns chi^2.
double entangler_variance(const GaussianModeState& state, double chi);

/// Per-mode entangler variance densities (same normalisation as above).
std::vector<double> entangler_variance_per_mode(const GaussianModeState& state, double chi);

}  // namespace txh::field
