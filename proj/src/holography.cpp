#include "txh/holography.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "txh/numerics/quadrature.hpp"

namespace txh::holography {

namespace {

constexpr std::array<double, 3> kSignature = {1.0, 1.0, -1.0};
constexpr std::size_t kMinCurvatureSamples = 16;
constexpr double kTruncationWarning = 0.01;
constexpr double kGridRelTol = 1e-6;

void require_positive_z(double z, const char* op) {
    if (!(z > 0.0) || !std::isfinite(z)) {
        throw std::invalid_argument(std::string(op) + ": z must be finite and > 0");
    }
}

// Diagonal metric components and their first two z-derivatives.
struct DiagonalJet {
    std::array<double, 3> g;
    std::array<double, 3> dg;
    std::array<double, 3> d2g;
};

DiagonalJet diagonal_jet(const WeightJet& jet) {
    DiagonalJet d{};
    for (int a = 0; a < 3; ++a) {
        d.g[a] = kSignature[a] * jet.w;
        d.dg[a] = kSignature[a] * jet.dw;
        d.d2g[a] = kSignature[a] * jet.d2w;
    }
    return d;
}

// Only z (index 0) derivatives are non-zero. Gamma^a_bc = X / (2 g_a) with
// X = d_b g_ac + d_c g_ab - d_a g_bc.
double christoffel_numerator(const std::array<double, 3>& dg, int a, int b, int c) {
    double x = 0.0;
    if (b == 0 && a == c) x += dg[a];
    if (c == 0 && a == b) x += dg[a];
    if (a == 0 && b == c) x -= dg[b];
    return x;
}

WeightJet weight_jet(double z, const MetricFamily& family, DerivativeMode mode) {
    return mode == DerivativeMode::analytic ? weight_jet_analytic(z, family)
                                            : weight_jet_dual(z, family);
}

}  // namespace

void MetricFamily::validate() const {
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("MetricFamily: beta must be finite and >= 0");
    }
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw std::invalid_argument("MetricFamily: epsilon must be finite and > 0");
    }
}

double MetricFamily::propagator_coefficient() const { return beta / (epsilon * epsilon); }

double z_from_u(double u, double epsilon, ScaleConvention convention) {
    return epsilon * std::exp(convention == ScaleConvention::shrinking ? -u : u);
}

double u_from_z(double z, double epsilon, ScaleConvention convention) {
    require_positive_z(z, "u_from_z");
    const double u = std::log(z / epsilon);
    return convention == ScaleConvention::shrinking ? -u : u;
}

std::array<double, 3> metric_at(double z, const MetricFamily& family) {
    require_positive_z(z, "metric_at");
    family.validate();
    const double w = family.weight(z);
    return {w, w, -w};
}

WeightJet weight_jet_analytic(double z, const MetricFamily& family) {
    require_positive_z(z, "weight_jet");
    // w = 1 / (4 p^2) with p = z + b / z.
    const double b = family.beta * family.epsilon * family.epsilon;
    const double p = z + b / z;
    const double dp = 1.0 - b / (z * z);
    const double d2p = 2.0 * b / (z * z * z);
    const double inv_p = 1.0 / p;
    const double inv_p2 = inv_p * inv_p;
    const double w = 0.25 * inv_p2;
    const double dw = -0.5 * inv_p2 * inv_p * dp;
    const double d2w = 1.5 * inv_p2 * inv_p2 * dp * dp - 0.5 * inv_p2 * inv_p * d2p;
    return {w, dw, d2w};
}

WeightJet weight_jet_dual(double z, const MetricFamily& family) {
    require_positive_z(z, "weight_jet");
    const auto jet = numerics::jet2([&family](auto x) { return family.weight(x); }, z);
    return {jet.value, jet.first, jet.second};
}

Christoffel christoffel(const WeightJet& jet) {
    const auto d = diagonal_jet(jet);
    Christoffel gamma{};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                gamma[a][b][c] = christoffel_numerator(d.dg, a, b, c) / (2.0 * d.g[a]);
    return gamma;
}

double lambda_closed_form(double z, const MetricFamily& family) {
    require_positive_z(z, "lambda_closed_form");
    const double x = family.beta * family.epsilon * family.epsilon / (z * z);
    return -4.0 * (1.0 + x + 2.0 * x * x) / (1.0 + x);
}

CurvaturePoint curvature_at(double z, const MetricFamily& family, DerivativeMode mode) {
    require_positive_z(z, "curvature_at");
    family.validate();
    const WeightJet jet = weight_jet(z, family, mode);
    const auto d = diagonal_jet(jet);
    const Christoffel gamma = christoffel(jet);

    // z-derivative of Gamma^a_bc = X / (2 g_a).
    Christoffel dgamma{};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
                const double x = christoffel_numerator(d.dg, a, b, c);
                const double dx = christoffel_numerator(d.d2g, a, b, c);
                dgamma[a][b][c] = dx / (2.0 * d.g[a]) - x * d.dg[a] / (2.0 * d.g[a] * d.g[a]);
            }

    CurvaturePoint p{};
    p.z = z;
    p.metric = d.g;
    // R_bc = d_a G^a_bc - d_c G^a_ba + G^a_as G^s_bc - G^a_cs G^s_ba
    for (int b = 0; b < 3; ++b) {
        const int c = b;
        double r = dgamma[0][b][c];
        if (c == 0) {
            for (int a = 0; a < 3; ++a) r -= dgamma[a][b][a];
        }
        for (int a = 0; a < 3; ++a)
            for (int s = 0; s < 3; ++s)
                r += gamma[a][a][s] * gamma[s][b][c] - gamma[a][c][s] * gamma[s][b][a];
        p.ricci[b] = r;
    }
    p.scalar = 0.0;
    for (int a = 0; a < 3; ++a) p.scalar += p.ricci[a] / d.g[a];
    p.lambda = lambda_closed_form(z, family);
    p.lambda_traceless = p.scalar / 6.0;
    for (int a = 0; a < 3; ++a) {
        p.einstein[a] = p.ricci[a] - 0.5 * d.g[a] * p.scalar;
        p.stress[a] = p.einstein[a] + p.lambda * d.g[a];
    }
    return p;
}

CurvatureReport curvature_report(const MetricFamily& family, std::span<const double> z_grid,
                                 DerivativeMode mode) {
    if (z_grid.size() < kMinCurvatureSamples) {
        throw std::invalid_argument("curvature_report: need at least 16 z samples");
    }
    for (double z : z_grid) {
        if (!(z > 0.0)) throw std::invalid_argument("curvature_report: z grid touches z <= 0");
    }
    CurvatureReport report{family, {}};
    report.points.reserve(z_grid.size());
    for (double z : z_grid) report.points.push_back(curvature_at(z, family, mode));
    return report;
}

double Propagator::flux(double z) const {
    require_positive_z(z, "Propagator::flux");
    const auto jet = numerics::jet2([this](auto x) { return value(x); }, z);
    return jet.first / (2.0 * z * (1.0 + beta_hat * z * z));
}

double Propagator::flux_residual(double z) const {
    require_positive_z(z, "Propagator::flux_residual");
    using numerics::Dual;
    const auto jet = numerics::jet2([this](auto x) { return value(x); }, z);
    const Dual<double> dk{jet.first, jet.second};
    const Dual<double> zd{z, 1.0};
    const Dual<double> flux = dk / (2.0 * zd * (1.0 + beta_hat * zd * zd));
    return flux.d;
}

BoundaryField::BoundaryField(double x0, double dx, std::size_t nx, double t0, double dt,
                             std::size_t nt, std::vector<double> values)
    : x0_(x0), dx_(dx), nx_(nx), t0_(t0), dt_(dt), nt_(nt), values_(std::move(values)) {
    if (nx_ < 2 || nt_ < 2) throw std::invalid_argument("BoundaryField: need at least 2x2 samples");
    if (!(dx_ > 0.0) || !(dt_ > 0.0)) throw std::invalid_argument("BoundaryField: steps must be > 0");
    if (values_.size() != nx_ * nt_) {
        throw std::invalid_argument("BoundaryField: value count does not match grid");
    }
}

BoundaryField BoundaryField::sample(const std::function<double(double, double)>& phi,
                                    double x_min, double x_max, std::size_t nx, double t_min,
                                    double t_max, std::size_t nt) {
    if (nx < 2 || nt < 2) throw std::invalid_argument("BoundaryField: need at least 2x2 samples");
    const double dx = (x_max - x_min) / static_cast<double>(nx - 1);
    const double dt = (t_max - t_min) / static_cast<double>(nt - 1);
    std::vector<double> values(nx * nt);
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < nt; ++j)
            values[i * nt + j] =
                phi(x_min + dx * static_cast<double>(i), t_min + dt * static_cast<double>(j));
    return BoundaryField(x_min, dx, nx, t_min, dt, nt, std::move(values));
}

BoundaryField BoundaryField::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("boundary csv: cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_csv_text(buffer.str());
}

namespace {

std::vector<double> uniform_axis(const std::map<double, int>& seen, const char* name,
                                 double& step) {
    std::vector<double> axis;
    for (const auto& [v, _] : seen) axis.push_back(v);
    if (axis.size() < 2) {
        throw std::invalid_argument(std::string("boundary csv: need >= 2 distinct ") + name +
                                    " values");
    }
    step = (axis.back() - axis.front()) / static_cast<double>(axis.size() - 1);
    for (std::size_t i = 1; i < axis.size(); ++i) {
        const double d = axis[i] - axis[i - 1];
        if (std::abs(d - step) > kGridRelTol * std::abs(step)) {
            throw std::invalid_argument(std::string("boundary csv: ") + name +
                                        " samples are not uniformly spaced near " +
                                        std::to_string(axis[i]));
        }
    }
    return axis;
}

}  // namespace

BoundaryField BoundaryField::from_csv_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::array<double, 3>> rows;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::array<double, 3> row{};
        std::stringstream fields(line);
        std::string cell;
        int col = 0;
        bool numeric = true;
        while (std::getline(fields, cell, ',')) {
            if (col >= 3) {
                throw std::invalid_argument("boundary csv line " + std::to_string(line_no) +
                                            ": expected 3 columns x,t,phi0");
            }
            try {
                std::size_t used = 0;
                row[col] = std::stod(cell, &used);
                while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
                    ++used;
                if (used != cell.size()) numeric = false;
            } catch (const std::exception&) {
                numeric = false;
            }
            ++col;
        }
        if (!numeric && rows.empty() && line_no == 1) continue;  // header
        if (!numeric || col != 3) {
            throw std::invalid_argument("boundary csv line " + std::to_string(line_no) +
                                        ": expected numeric x,t,phi0");
        }
        rows.push_back(row);
    }
    std::map<double, int> xs;
    std::map<double, int> ts;
    for (const auto& r : rows) {
        xs[r[0]] = 0;
        ts[r[1]] = 0;
    }
    double dx = 0.0;
    double dt = 0.0;
    const auto x_axis = uniform_axis(xs, "x", dx);
    const auto t_axis = uniform_axis(ts, "t", dt);
    const std::size_t nx = x_axis.size();
    const std::size_t nt = t_axis.size();
    for (std::size_t i = 0; i < nx; ++i) xs[x_axis[i]] = static_cast<int>(i);
    for (std::size_t j = 0; j < nt; ++j) ts[t_axis[j]] = static_cast<int>(j);
    if (rows.size() != nx * nt) {
        throw std::invalid_argument("boundary csv: " + std::to_string(rows.size()) +
                                    " samples do not fill a " + std::to_string(nx) + "x" +
                                    std::to_string(nt) + " grid");
    }
    std::vector<double> values(nx * nt, 0.0);
    std::vector<char> filled(nx * nt, 0);
    for (const auto& r : rows) {
        const std::size_t idx =
            static_cast<std::size_t>(xs[r[0]]) * nt + static_cast<std::size_t>(ts[r[1]]);
        if (filled[idx]) {
            throw std::invalid_argument("boundary csv: duplicate sample at x=" +
                                        std::to_string(r[0]) + ", t=" + std::to_string(r[1]));
        }
        filled[idx] = 1;
        values[idx] = r[2];
    }
    return BoundaryField(x_axis.front(), dx, nx, t_axis.front(), dt, nt, std::move(values));
}

BoundaryField BoundaryField::scaled_sum(double alpha, const BoundaryField& other) const {
    if (other.nx_ != nx_ || other.nt_ != nt_ || other.x0_ != x0_ || other.t0_ != t0_ ||
        other.dx_ != dx_ || other.dt_ != dt_) {
        throw std::invalid_argument("BoundaryField: grids differ");
    }
    std::vector<double> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = alpha * values_[i] + other.values_[i];
    return BoundaryField(x0_, dx_, nx_, t0_, dt_, nt_, std::move(v));
}

double kernel_total_mass(double z, double beta_hat) {
    return std::numbers::pi * (1.0 + beta_hat / (6.0 * z * z));
}

double boundary_kernel(double z, double r2, double beta_hat) {
    const double s = z * z + r2;
    const double base = z * z / (s * s);
    return (1.0 + 0.5 * beta_hat * base) * base;
}

BulkValue boundary_to_bulk(const BoundaryField& phi0, double z, double x, double t,
                           double beta_hat, double c) {
    require_positive_z(z, "boundary_to_bulk");
    double sum = 0.0;
    double mass = 0.0;
    for (std::size_t i = 0; i < phi0.nx(); ++i) {
        const double wx = (i == 0 || i + 1 == phi0.nx()) ? 0.5 : 1.0;
        const double ddx = x - phi0.x(i);
        for (std::size_t j = 0; j < phi0.nt(); ++j) {
            const double wt = (j == 0 || j + 1 == phi0.nt()) ? 0.5 : 1.0;
            const double ddt = t - phi0.t(j);
            const double k = wx * wt * boundary_kernel(z, ddx * ddx + ddt * ddt, beta_hat);
            sum += k * phi0.at(i, j);
            mass += k;
        }
    }
    const double cell = phi0.dx() * phi0.dt();
    const double captured = mass * cell / kernel_total_mass(z, beta_hat);
    return {c * sum * cell, captured, captured < 1.0 - kTruncationWarning};
}

LogLength geodesic_log_length(double a, double xi) {
    if (!(a > 0.0) || !(a < xi) || !std::isfinite(xi)) {
        throw std::invalid_argument("geodesic_log_length: need 0 < a < xi");
    }
    numerics::QuadratureSpec spec;
    spec.abs_tol = 1e-14;
    spec.rel_tol = 1e-13;
    const auto q = numerics::integrate([](double z) { return 1.0 / z; }, a, xi, spec);
    return {std::log(xi / a), q.value};
}

}  // namespace txh::holography
