#include "txh/scattering.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "txh/numerics/quadrature.hpp"

namespace txh::scattering {

namespace {

constexpr double kPsdRelTol = 1e-12;
constexpr double kCriticalRelTol = 1e-12;
constexpr double kImagRelTol = 1e-9;

numerics::QuadratureSpec variance_quadrature_spec() {
    numerics::QuadratureSpec spec;
    spec.abs_tol = 1e-14;
    spec.rel_tol = 1e-12;
    spec.max_subdivisions = 5000;
    spec.transform = numerics::DomainTransform::semi_infinite_rational;
    return spec;
}

// Spectral density of the endpoint charge in units of q_k = (L/R) omega_k.
double lorentz_kernel(double qk, double q) {
    const double d = qk * qk - q * q;
    return qk / (d * d + qk * qk);
}

std::string indices(int i, int j) {
    std::ostringstream os;
    os << "(" << i << "," << j << ")";
    return os.str();
}

}  // namespace

void validate_symmetric_psd(const RealMatrix& m, const std::string& name, double sym_tol) {
    if (m.rows() != m.cols()) {
        throw JunctionError(name + ": matrix must be square");
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = i + 1; j < m.cols(); ++j) {
            if (std::abs(m(i, j) - m(j, i)) > sym_tol * scale) {
                throw JunctionError(name + ": not symmetric at " + indices(i + 1, j + 1), i + 1,
                                    j + 1);
            }
        }
    }
    for (int i = 0; i < m.rows(); ++i) {
        if (!std::isfinite(m(i, i))) {
            throw JunctionError(name + ": non-finite entry at " + indices(i + 1, i + 1), i + 1,
                                i + 1);
        }
    }
    const RealMatrix sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<RealMatrix> eig(sym);
    const double norm = std::max(eig.eigenvalues().cwiseAbs().maxCoeff(), 0.0);
    const double floor = -kPsdRelTol * norm;
    if (eig.eigenvalues().minCoeff() >= floor) return;

    // Name the smallest principal block that already fails.
    for (int i = 0; i < m.rows(); ++i) {
        if (sym(i, i) < floor) {
            throw JunctionError(name + ": not positive semi-definite, negative diagonal at " +
                                    indices(i + 1, i + 1),
                                i + 1, i + 1);
        }
    }
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = i + 1; j < m.cols(); ++j) {
            const double det = sym(i, i) * sym(j, j) - sym(i, j) * sym(i, j);
            if (det < floor * norm) {
                throw JunctionError(name + ": not positive semi-definite, 2x2 minor at " +
                                        indices(i + 1, j + 1) + " is negative",
                                    i + 1, j + 1);
            }
        }
    }
    Eigen::Index worst = 0;
    eig.eigenvectors().col(0).cwiseAbs().maxCoeff(&worst);
    std::ostringstream os;
    os << name << ": not positive semi-definite, eigenvalue " << eig.eigenvalues()(0)
       << " concentrated on index " << worst + 1;
    throw JunctionError(os.str(), static_cast<int>(worst) + 1, static_cast<int>(worst) + 1);
}

JunctionSpec::JunctionSpec(std::vector<circuits::TransmissionLineSpec> lines,
                           RealMatrix mutual_inductance, RealMatrix elastance,
                           circuits::PhysicalConstants consts)
    : lines_(std::move(lines)),
      inductance_(std::move(mutual_inductance)),
      elastance_(std::move(elastance)),
      consts_(consts) {
    const auto n = static_cast<Eigen::Index>(lines_.size());
    if (n == 0) throw JunctionError("junction: at least one line is required");
    if (inductance_.rows() != n || inductance_.cols() != n) {
        throw JunctionError("mutual_inductance: expected " + std::to_string(n) + "x" +
                            std::to_string(n) + " matrix");
    }
    if (elastance_.rows() != n || elastance_.cols() != n) {
        throw JunctionError("elastance: expected " + std::to_string(n) + "x" + std::to_string(n) +
                            " matrix");
    }
    validate_symmetric_psd(inductance_, "mutual_inductance");
    validate_symmetric_psd(elastance_, "elastance");
}

Eigen::VectorXd JunctionSpec::resistances() const {
    Eigen::VectorXd r(static_cast<Eigen::Index>(lines_.size()));
    for (std::size_t i = 0; i < lines_.size(); ++i) {
        r(static_cast<Eigen::Index>(i)) = lines_[i].resistance();
    }
    return r;
}

bool JunctionSpec::operator==(const JunctionSpec& o) const {
    return lines_ == o.lines_ && inductance_ == o.inductance_ && elastance_ == o.elastance_ &&
           consts_.hbar() == o.consts_.hbar();
}

double unitarity_defect(const ComplexMatrix& s) {
    const ComplexMatrix defect =
        s.adjoint() * s - ComplexMatrix::Identity(s.rows(), s.cols());
    return defect.cwiseAbs().maxCoeff();
}

std::string to_string(Regime regime) {
    switch (regime) {
        case Regime::overdamped: return "overdamped";
        case Regime::critical: return "critical";
        case Regime::underdamped: return "underdamped";
    }
    return "unknown";
}

QFactorRegime::QFactorRegime(double q) : q_(q) {
    if (!(q > 0.0) || !std::isfinite(q)) {
        throw std::invalid_argument("QFactorRegime: q must be finite and > 0");
    }
    if (std::abs(q - 0.5) <= kCriticalRelTol * 0.5) {
        regime_ = Regime::critical;
    } else {
        regime_ = q > 0.5 ? Regime::underdamped : Regime::overdamped;
    }
}

Complex transfer_function(double omega, const circuits::EndpointLCSpec& endpoint,
                          double resistance) {
    if (!(omega > 0.0)) throw std::invalid_argument("transfer_function: omega must be > 0");
    if (!(resistance >= 0.0)) throw std::invalid_argument("transfer_function: R must be >= 0");
    const double reactive = omega * omega * endpoint.inductance() - 1.0 / endpoint.capacitance();
    const Complex denom(reactive, -omega * resistance);
    const double scale = omega * omega * endpoint.inductance() + 1.0 / endpoint.capacitance();
    if (std::abs(denom) <= 4.0 * std::numeric_limits<double>::epsilon() * scale) {
        throw SingularFrequencyError("transfer_function: undamped resonance pole at omega = " +
                                         std::to_string(omega),
                                     omega);
    }
    return -1.0 / denom;
}

Complex single_line_s(double omega, const circuits::EndpointLCSpec& endpoint, double resistance) {
    // Shares the pole check with the transfer function.
    (void)transfer_function(omega, endpoint, resistance);
    const double reactive = omega * omega * endpoint.inductance() - 1.0 / endpoint.capacitance();
    const double damping = omega * resistance;
    return Complex(reactive, damping) / Complex(reactive, -damping);
}

ScatterSample network_s_matrix(double omega, const JunctionSpec& junction) {
    if (!(omega > 0.0)) throw std::invalid_argument("network_s_matrix: omega must be > 0");
    const auto n = static_cast<Eigen::Index>(junction.size());
    const Eigen::VectorXd r = junction.resistances();

    // A(w) Q = 2 i w R Q_in, with A(w) = -w^2 L + E + i w diag(R).
    ComplexMatrix a = (-omega * omega * junction.mutual_inductance() + junction.elastance())
                          .cast<Complex>();
    for (Eigen::Index i = 0; i < n; ++i) a(i, i) += Complex(0.0, omega * r(i));

    Eigen::FullPivLU<ComplexMatrix> lu(a);
    if (!lu.isInvertible()) {
        throw SingularFrequencyError(
            "network_s_matrix: junction matrix A(omega) is singular at omega = " +
                std::to_string(omega),
            omega);
    }
    ComplexMatrix drive = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) drive(i, i) = Complex(0.0, 2.0 * omega * r(i));
    // Q_out = Q - Q_in
    const ComplexMatrix raw_charge = lu.solve(drive) - ComplexMatrix::Identity(n, n);

    // Flux normalisation: a~ = sqrt(R) a.
    const Eigen::VectorXd root = r.cwiseSqrt();
    ComplexMatrix flux = raw_charge;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) flux(i, j) *= root(i) / root(j);
    }
    ScatterSample sample;
    sample.omega = omega;
    sample.convention_sign = -1.0;
    sample.s_matrix = -flux;
    return sample;
}

double charge_variance_quadrature(const QFactorRegime& q, double resistance, double hbar) {
    if (!(resistance > 0.0)) throw std::invalid_argument("charge variance: R must be > 0");
    const double qv = q.q();
    const auto result = numerics::integrate([qv](double qk) { return lorentz_kernel(qk, qv); },
                                            0.0, numerics::kInfinity, variance_quadrature_spec());
    return hbar / (2.0 * resistance) * result.value;
}

double charge_variance_closed(const QFactorRegime& q, double resistance, double hbar) {
    if (!(resistance > 0.0)) throw std::invalid_argument("charge variance: R must be > 0");
    const double prefactor = hbar / (2.0 * resistance);
    if (q.regime() == Regime::critical) {
        // Limit of the underdamped branch as 4q^2 - 1 -> 0: the integral equals 2.
        return prefactor * 2.0;
    }
    const double q2 = q.q() * q.q();
    const Complex root = std::sqrt(Complex(4.0 * q2 - 1.0, 0.0));
    Complex arg = Complex(2.0 * q2 - 1.0, 0.0) / root;
    if (q.regime() == Regime::overdamped) {
        // arg lies on atan's cut (imaginary axis, |arg| > 1). Continuing root
        // from q > 1/2 around 0 reaches it from Re(arg) < 0.
        arg = Complex(-0.0, arg.imag());
    }
    const Complex value =
        prefactor * (std::numbers::pi + 2.0 * std::atan(arg)) / (2.0 * root);
    if (std::abs(value.imag()) > kImagRelTol * std::abs(value.real())) {
        throw BranchError("charge_variance_closed: imaginary residue " +
                          std::to_string(value.imag()) + " at q = " + std::to_string(q.q()));
    }
    return value.real();
}

double charge_variance_critical_quoted(double resistance, double hbar) {
    return std::numbers::pi * hbar / (2.0 * resistance);
}

double charge_variance_large_q_quoted(double resistance, double hbar) {
    return std::numbers::pi * hbar / (4.0 * resistance);
}

double cmera_weighted_variance(const WeightedVarianceParams& p) {
    if (!(p.q > 0.0) || !(p.gamma > 0.0) || !(p.lambda_cutoff > 0.0) || !(p.lt_over_l > 0.0) ||
        !(p.resistance > 0.0) || !(p.hbar > 0.0)) {
        throw std::invalid_argument("cmera_weighted_variance: all parameters must be > 0");
    }
    const double q = p.q;
    const double coupling = p.lt_over_l / (p.lambda_cutoff * q * q);
    const auto result = numerics::integrate(
        [q, coupling](double qk) {
            return lorentz_kernel(qk, q) / std::sqrt(1.0 + coupling * qk * qk);
        },
        0.0, numerics::kInfinity, variance_quadrature_spec());
    return p.gamma * p.hbar / (2.0 * p.resistance) * result.value;
}

}  // namespace txh::scattering
