#include "txh/cmera.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "txh/numerics/minimize.hpp"

namespace txh::cmera {

namespace {

constexpr numerics::Bracket kSqueezeBracket{-30.0, 30.0};
constexpr double kSqueezeTol = 1e-12;
constexpr std::size_t kMinChiModes = 64;
constexpr std::size_t kStencil = 5;

const circuits::EndpointLCSpec& require_endpoint(const FlowConfig& cfg, const char* op) {
    if (!cfg.endpoint) {
        throw std::invalid_argument(std::string(op) + ": flow config has no endpoint");
    }
    return *cfg.endpoint;
}

// Fornberg's recursion for first-derivative weights at x0 on arbitrary nodes.
std::vector<double> first_derivative_weights(double x0, std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::vector<double>> c(n, std::vector<double>(2, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - x0;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t mn = std::min<std::size_t>(i, 1);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - x0;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (std::size_t k = mn; k >= 1; --k) {
                    c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (std::size_t k = mn; k >= 1; --k) {
                c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = c[i][1];
    return w;
}

double holographic_coupling(const FlowConfig& cfg) {
    const auto& ep = require_endpoint(cfg, "chi");
    return cfg.line.inductance_per_length() / ep.inductance() / cfg.lambda_cutoff;
}

double stationary_coupling(const FlowConfig& cfg) {
    const auto& ep = require_endpoint(cfg, "chi");
    const double w0 = ep.resonance();
    const double v = cfg.line.velocity();
    return ep.inductance() / cfg.line.inductance_per_length() * (w0 * w0) /
           (v * v * cfg.lambda_cutoff);
}

}  // namespace

FlowConfig FlowConfig::make(const circuits::TransmissionLineSpec& line, double lambda_cutoff,
                            std::optional<circuits::EndpointLCSpec> endpoint, double u_min,
                            std::size_t modes, circuits::PhysicalConstants consts) {
    FlowConfig cfg{lambda_cutoff, u_min, field::ModeGrid::log_uniform(lambda_cutoff, u_min, modes),
                   line, endpoint, consts};
    cfg.validate();
    return cfg;
}

void FlowConfig::validate() const {
    if (!(u_min < 0.0) || !std::isfinite(u_min)) {
        throw std::invalid_argument("FlowConfig: u_min must be finite and < 0");
    }
    if (grid.cutoff() != lambda_cutoff) {
        throw std::invalid_argument("FlowConfig: grid cutoff must equal lambda_cutoff");
    }
}

double FlowConfig::cutoff_frequency() const {
    return field::cutoff_frequency(line, lambda_cutoff);
}

double FlowConfig::endpoint_loading() const {
    return line.inductance_per_length() * lambda_cutoff /
           require_endpoint(*this, "endpoint_loading").inductance();
}

double ModeCoefficients::energy(double f) const {
    return 0.25 * (a * std::exp(2.0 * f) + b * std::exp(-2.0 * f));
}

double ModeCoefficients::slope(double f) const {
    return 0.5 * (a * std::exp(2.0 * f) - b * std::exp(-2.0 * f));
}

double ModeCoefficients::stationary() const { return 0.25 * std::log(b / a); }

std::vector<ModeCoefficients> mode_coefficients(const FlowConfig& cfg, Functional functional) {
    cfg.validate();
    const double w_cut = cfg.cutoff_frequency();
    std::vector<ModeCoefficients> out;
    out.reserve(cfg.grid.size());
    if (functional == Functional::free_line) {
        for (double k : cfg.grid.wavenumbers()) {
            const double wk = circuits::dispersion(cfg.line, k);
            out.push_back({w_cut, wk * wk / w_cut});
        }
        return out;
    }
    const auto& ep = require_endpoint(cfg, "mode_coefficients");
    const double w0 = ep.resonance();
    const double a = (1.0 + cfg.endpoint_loading()) * w_cut;
    const double zero_mode =
        ep.inductance() / cfg.line.inductance_per_length() * w0 * w0 * cfg.lambda_cutoff;
    for (double k : cfg.grid.wavenumbers()) {
        const double wk = circuits::dispersion(cfg.line, k);
        out.push_back({a, (wk * wk + zero_mode) / w_cut});
    }
    return out;
}

double energy(std::span<const double> f, const FlowConfig& cfg, Functional functional) {
    if (f.size() != cfg.grid.size()) {
        throw std::invalid_argument("energy: profile size does not match the grid");
    }
    const auto coeffs = mode_coefficients(cfg, functional);
    const auto weights = cfg.grid.trapezoid_weights();
    double total = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!std::isfinite(f[i])) {
            throw std::invalid_argument("energy: non-finite squeeze at mode " + std::to_string(i));
        }
        total += weights[i] * coeffs[i].energy(f[i]);
    }
    return total;
}

double energy_free(std::span<const double> f, const FlowConfig& cfg) {
    return energy(f, cfg, Functional::free_line);
}

double energy_endpoint(std::span<const double> f, const FlowConfig& cfg) {
    return energy(f, cfg, Functional::endpoint);
}

VariationalResult minimize_per_mode(const FlowConfig& cfg, Functional functional) {
    const auto coeffs = mode_coefficients(cfg, functional);
    std::vector<double> f(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const auto& c = coeffs[i];
        f[i] = numerics::minimize_convex([&c](double x) { return c.slope(x); }, kSqueezeBracket,
                                         kSqueezeTol);
    }
    VariationalResult result{functional, f, chi_from_f(f, cfg), energy(f, cfg, functional)};
    return result;
}

ChiSamples chi_from_f(std::span<const double> f, const FlowConfig& cfg) {
    const std::size_t n = cfg.grid.size();
    if (f.size() != n) throw std::invalid_argument("chi_from_f: profile size does not match grid");
    ChiSamples out;
    out.resolution_warning = n < kMinChiModes;
    out.scale.resize(n);
    out.chi.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.scale[i] = std::log(cfg.grid[i] / cfg.lambda_cutoff);

    const std::size_t width = std::min(kStencil, n);
    for (std::size_t i = 0; i < n; ++i) {
        // Centred window where possible, shifted inward at the ends.
        std::size_t first = i >= width / 2 ? i - width / 2 : 0;
        first = std::min(first, n - width);
        const std::span<const double> nodes(out.scale.data() + first, width);
        const auto w = first_derivative_weights(out.scale[i], nodes);
        double d = 0.0;
        for (std::size_t j = 0; j < width; ++j) d += w[j] * f[first + j];
        out.chi[i] = d;
    }
    return out;
}

ChiSamples chi_from_f(const VariationalResult& result, const FlowConfig& cfg) {
    return chi_from_f(result.f_star, cfg);
}

std::vector<double> f_free_closed(const FlowConfig& cfg) {
    const double w_cut = cfg.cutoff_frequency();
    std::vector<double> out;
    out.reserve(cfg.grid.size());
    for (double k : cfg.grid.wavenumbers()) {
        out.push_back(0.5 * std::log(circuits::dispersion(cfg.line, k) / w_cut));
    }
    return out;
}

std::vector<double> f_endpoint_unloaded(const FlowConfig& cfg) {
    const auto& ep = require_endpoint(cfg, "f_endpoint_unloaded");
    const double w_cut = cfg.cutoff_frequency();
    const double w0 = ep.resonance();
    const double ratio = ep.inductance() / cfg.line.inductance_per_length();
    std::vector<double> out;
    out.reserve(cfg.grid.size());
    for (double k : cfg.grid.wavenumbers()) {
        const double wk = circuits::dispersion(cfg.line, k);
        out.push_back(0.5 * std::log(wk / w_cut *
                                     std::sqrt(1.0 + ratio * (w0 * w0) / (wk * wk) *
                                                         cfg.lambda_cutoff)));
    }
    return out;
}

double chi_at(const FlowConfig& cfg, double u, ChiModel model) {
    if (!cfg.endpoint) return 0.5;
    if (model == ChiModel::holographic) {
        return 0.5 / (1.0 + holographic_coupling(cfg) * std::exp(2.0 * u));
    }
    return 0.5 / (1.0 + stationary_coupling(cfg) * std::exp(-2.0 * u));
}

double chi_integral(const FlowConfig& cfg, double s, ChiModel model) {
    if (!cfg.endpoint) return 0.5 * s;
    if (model == ChiModel::holographic) {
        const double c = holographic_coupling(cfg);
        return 0.5 * (s - 0.5 * std::log1p(c * std::exp(2.0 * s)) + 0.5 * std::log1p(c));
    }
    const double d = stationary_coupling(cfg);
    return 0.25 * (2.0 * s + std::log1p(d * std::exp(-2.0 * s)) - std::log1p(d));
}

field::SqueezeProfile profile_at(const FlowConfig& cfg, double u, ChiModel model) {
    if (u > 0.0) throw std::invalid_argument("profile_at: scale u must be <= 0");
    std::vector<double> f;
    f.reserve(cfg.grid.size());
    for (double k : cfg.grid.wavenumbers()) {
        const double boundary = std::log(k / cfg.lambda_cutoff);
        f.push_back(u == 0.0 ? 0.0 : chi_integral(cfg, std::max(u, boundary), model));
    }
    return field::SqueezeProfile(cfg.grid, std::move(f), u);
}

double metric_uu(const FlowConfig& cfg, double u, ChiModel model) {
    const auto vacuum = field::ir_vacuum(cfg.line, cfg.grid, cfg.consts);
    const auto flowed = field::apply_squeeze(vacuum, profile_at(cfg, u, model));
    return field::entangler_variance(flowed, chi_at(cfg, u, model));
}

}  // namespace txh::cmera
