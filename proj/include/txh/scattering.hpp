#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "txh/circuits.hpp"

namespace txh::scattering {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

/// Raised for invalid junction data; `row`/`col` are 1-based indices of the
/// offending entry when one can be named (0 otherwise).
class JunctionError : public std::invalid_argument {
public:
    JunctionError(const std::string& what, int row = 0, int col = 0)
        : std::invalid_argument(what), row_(row), col_(col) {}
    int row() const { return row_; }
    int col() const { return col_; }

private:
    int row_;
    int col_;
};

/// Frequency at which a response cannot be formed (pole or singular solve).
class SingularFrequencyError : public std::runtime_error {
public:
    SingularFrequencyError(const std::string& what, double omega)
        : std::runtime_error(what), omega_(omega) {}
    double omega() const { return omega_; }

private:
    double omega_;
};

/// Raised when a closed-form branch leaves a non-negligible imaginary part.
class BranchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// N semi-infinite lines joined at x = 0 through symmetric mutual inductance
/// and elastance (inverse capacitance) matrices.
class JunctionSpec {
public:
    JunctionSpec(std::vector<circuits::TransmissionLineSpec> lines, RealMatrix mutual_inductance,
                 RealMatrix elastance, circuits::PhysicalConstants consts = {});

    std::size_t size() const { return lines_.size(); }
    const std::vector<circuits::TransmissionLineSpec>& lines() const { return lines_; }
    const RealMatrix& mutual_inductance() const { return inductance_; }
    const RealMatrix& elastance() const { return elastance_; }
    double hbar() const { return consts_.hbar(); }
    Eigen::VectorXd resistances() const;

    bool operator==(const JunctionSpec& o) const;

private:
    std::vector<circuits::TransmissionLineSpec> lines_;
    RealMatrix inductance_;
    RealMatrix elastance_;
    circuits::PhysicalConstants consts_;
};

/// Checks symmetry (|M_ij - M_ji| <= sym_tol * max(1, ||M||)) and
/// PSD-ness (eigenvalues >= -1e-12 ||M||). Throws JunctionError naming indices.
void validate_symmetric_psd(const RealMatrix& m, const std::string& name, double sym_tol = 0.0);

struct ScatterSample {
    double omega;
    /// Scattering matrix in the flux-normalised basis, reported in the
    /// single-line sign convention S = (w^2 L - 1/C + i w R)/(w^2 L - 1/C - i w R).
    ComplexMatrix s_matrix;
    /// Sign relating the direct solve of the junction equation to s_matrix:
    /// raw = convention_sign * s_matrix.
    double convention_sign = -1.0;

    ComplexMatrix raw() const { return convention_sign * s_matrix; }
};

/// max_ij |(S^dagger S - I)_ij|
double unitarity_defect(const ComplexMatrix& s);

enum class Regime { overdamped, critical, underdamped };

std::string to_string(Regime regime);

class QFactorRegime {
public:
    explicit QFactorRegime(double q);

    double q() const { return q_; }
    Regime regime() const { return regime_; }

private:
    double q_;
    Regime regime_;
};

/// H(w) = -1 / (w^2 L - 1/C - i w R). R = 0 at w = w0 raises SingularFrequencyError.
Complex transfer_function(double omega, const circuits::EndpointLCSpec& endpoint, double resistance);

/// Reflection of a single line terminated by an LC endpoint; |S| = 1.
Complex single_line_s(double omega, const circuits::EndpointLCSpec& endpoint, double resistance);

ScatterSample network_s_matrix(double omega, const JunctionSpec& junction);

/// Endpoint charge variance by adaptive quadrature of the vacuum spectral integral.
double charge_variance_quadrature(const QFactorRegime& q, double resistance, double hbar = 1.0);

/// Endpoint charge variance from the closed-form branch expressions.
double charge_variance_closed(const QFactorRegime& q, double resistance, double hbar = 1.0);

/// Closed-form value the original derivation quotes at q = 1/2 (pi hbar / 2R).
double charge_variance_critical_quoted(double resistance, double hbar = 1.0);

/// Quoted large-q limit pi hbar / 4R.
double charge_variance_large_q_quoted(double resistance, double hbar = 1.0);

struct WeightedVarianceParams {
    double q;
    double gamma;
    double lambda_cutoff;
    double lt_over_l;
    double resistance;
    double hbar = 1.0;
};

/// Variance of the flowed endpoint state: the vacuum integrand weighted by
/// gamma / sqrt(1 + (L_T/L) (q_k/q)^2 / Lambda). Tends to
/// gamma * charge_variance_closed as Lambda -> infinity.
double cmera_weighted_variance(const WeightedVarianceParams& params);

}  // namespace txh::scattering
