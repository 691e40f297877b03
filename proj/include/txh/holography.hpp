#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "txh/numerics/dual.hpp"

namespace txh::holography {

/// Conformally flat metric on (z, x, t) with signature (+, +, -):
///   ds^2 = w(z) (dz^2 + dx^2 - dt^2),  w(z) = 1 / (4 z^2 (1 + beta eps^2 / z^2)^2).
/// beta = L_T / (L Lambda); beta = 0 is AdS_3 with radius 1/2.
struct MetricFamily {
    double beta = 0.0;
    double epsilon = 1.0;

    void validate() const;

    template <class T>
    T weight(T z) const {
        const T load = 1.0 + beta * epsilon * epsilon / (z * z);
        return 1.0 / (4.0 * z * z * load * load);
    }

    /// Coefficient multiplying z^2 in the propagator form of the weight:
    /// beta eps^2 / z^2 -> beta_hat z^2 with beta_hat = beta / eps^2.
    double propagator_coefficient() const;
};

enum class ScaleConvention {
    /// z = eps e^{-u}
    shrinking,
    /// z = eps e^{u}
    growing,
};

double z_from_u(double u, double epsilon, ScaleConvention convention);
double u_from_z(double z, double epsilon, ScaleConvention convention);

/// Diagonal components (g_zz, g_xx, g_tt).
std::array<double, 3> metric_at(double z, const MetricFamily& family);

/// w, w', w'' at z.
struct WeightJet {
    double w;
    double dw;
    double d2w;
};

WeightJet weight_jet_analytic(double z, const MetricFamily& family);
WeightJet weight_jet_dual(double z, const MetricFamily& family);

enum class DerivativeMode { analytic, dual };

/// Curvature of a diagonal metric g = diag(s_mu w(z)) with signs s = (+1, +1, -1),
/// built from Christoffel symbols. Returns lower-index diagonals.
struct CurvaturePoint {
    double z;
    std::array<double, 3> metric;
    std::array<double, 3> ricci;
    double scalar;
    std::array<double, 3> einstein;
    /// Cosmological term -4 (1 + x + 2x^2) / (1 + x), x = beta eps^2 / z^2.
    double lambda;
    /// R / 6, the value that would make T traceless. Equals lambda at beta = 0.
    double lambda_traceless;
    /// T = G + lambda g with kappa = 1.
    std::array<double, 3> stress;
};

struct CurvatureReport {
    MetricFamily family;
    std::vector<CurvaturePoint> points;
};

/// Christoffel symbols Gamma^a_{bc} for the weight jet (index order z, x, t).
using Christoffel = std::array<std::array<std::array<double, 3>, 3>, 3>;
Christoffel christoffel(const WeightJet& jet);

CurvaturePoint curvature_at(double z, const MetricFamily& family,
                            DerivativeMode mode = DerivativeMode::analytic);

/// Requires at least 16 strictly positive samples.
CurvatureReport curvature_report(const MetricFamily& family, std::span<const double> z_grid,
                                 DerivativeMode mode = DerivativeMode::analytic);

double lambda_closed_form(double z, const MetricFamily& family);

/// Radial bulk solution K(z) = c (1 + beta_hat z^2 / 2) z^2 of
/// d/dz [ (1 / (2 z (1 + beta_hat z^2))) dK/dz ] = 0.
struct Propagator {
    double beta_hat = 0.0;
    double c = 1.0;

    template <class T>
    T value(T z) const {
        return c * (1.0 + 0.5 * beta_hat * z * z) * z * z;
    }

    /// (1 / (2 z (1 + beta_hat z^2))) dK/dz, which equals c.
    double flux(double z) const;
    /// d/dz of flux; identically zero for the exact solution.
    double flux_residual(double z) const;
};

/// Boundary data phi0 sampled on a uniform rectangular (x, t) grid.
class BoundaryField {
public:
    BoundaryField(double x0, double dx, std::size_t nx, double t0, double dt, std::size_t nt,
                  std::vector<double> values);

    static BoundaryField sample(const std::function<double(double, double)>& phi, double x_min,
                                double x_max, std::size_t nx, double t_min, double t_max,
                                std::size_t nt);

    /// Reads "x,t,phi0" rows (header optional); the points must form a
    /// complete uniform grid.
    static BoundaryField from_csv(const std::string& path);
    static BoundaryField from_csv_text(const std::string& text);

    double x(std::size_t i) const { return x0_ + dx_ * static_cast<double>(i); }
    double t(std::size_t j) const { return t0_ + dt_ * static_cast<double>(j); }
    double dx() const { return dx_; }
    double dt() const { return dt_; }
    std::size_t nx() const { return nx_; }
    std::size_t nt() const { return nt_; }
    double at(std::size_t i, std::size_t j) const { return values_[i * nt_ + j]; }

    BoundaryField scaled_sum(double alpha, const BoundaryField& other) const;

private:
    double x0_, dx_;
    std::size_t nx_;
    double t0_, dt_;
    std::size_t nt_;
    std::vector<double> values_;  // row-major in x
};

struct BulkValue {
    double value;
    /// Fraction of the kernel's total mass captured by the sampled boundary.
    double captured_mass;
    /// Set when more than 1% of the kernel mass falls outside the samples.
    bool truncation_warning;
};

/// Total mass of the boundary kernel over the plane: pi (1 + beta_hat / (6 z^2)).
double kernel_total_mass(double z, double beta_hat);

/// Kernel c [1 + (beta_hat/2) z^2 / (z^2 + r^2)^2] z^2 / (z^2 + r^2)^2 without c.
double boundary_kernel(double z, double r2, double beta_hat);

/// Trapezoid-rule convolution of phi0 with the boundary kernel at bulk point (z, x, t).
BulkValue boundary_to_bulk(const BoundaryField& phi0, double z, double x, double t,
                           double beta_hat, double c = 1.0);

struct LogLength {
    double closed;
    double quadrature;
};

/// Radial length Int_a^xi dz / z.
LogLength geodesic_log_length(double a, double xi);

}  // namespace txh::holography
