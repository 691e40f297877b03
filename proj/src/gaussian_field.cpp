#include "txh/gaussian_field.hpp"

#include <cmath>
#include <string>

namespace txh::field {

namespace {

constexpr double kHeisenbergRelTol = 1e-12;

void require_same_grid(const ModeGrid& a, const ModeGrid& b, const char* op) {
    if (!(a == b)) {
        throw GridMismatch(std::string(op) + ": state and profile are defined on different grids");
    }
}

}  // namespace

ModeGrid::ModeGrid(double cutoff, std::vector<double> wavenumbers)
    : cutoff_(cutoff), k_(std::move(wavenumbers)) {
    if (!(cutoff_ > 0.0) || !std::isfinite(cutoff_)) {
        throw std::invalid_argument("ModeGrid: cutoff must be finite and > 0");
    }
    if (k_.size() < 2) {
        throw std::invalid_argument("ModeGrid: need at least 2 modes");
    }
    for (std::size_t i = 0; i < k_.size(); ++i) {
        if (!(k_[i] > 0.0) || k_[i] > cutoff_) {
            throw std::invalid_argument("ModeGrid: k[" + std::to_string(i) +
                                        "] outside (0, cutoff]");
        }
        if (i > 0 && !(k_[i] > k_[i - 1])) {
            throw std::invalid_argument("ModeGrid: wavenumbers must be strictly increasing at " +
                                        std::to_string(i));
        }
    }
}

ModeGrid ModeGrid::log_uniform(double cutoff, double log_span_min, std::size_t count) {
    if (!(log_span_min < 0.0)) {
        throw std::invalid_argument("ModeGrid::log_uniform: log_span_min must be < 0");
    }
    if (count < 2) throw std::invalid_argument("ModeGrid::log_uniform: need at least 2 modes");
    std::vector<double> k(count);
    const double step = -log_span_min / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        k[i] = cutoff * std::exp(log_span_min + step * static_cast<double>(i));
    }
    k.back() = cutoff;
    return ModeGrid(cutoff, std::move(k));
}

std::vector<double> ModeGrid::trapezoid_weights() const {
    std::vector<double> w(k_.size(), 0.0);
    for (std::size_t i = 0; i + 1 < k_.size(); ++i) {
        const double half = 0.5 * (k_[i + 1] - k_[i]);
        w[i] += half;
        w[i + 1] += half;
    }
    return w;
}

GaussianModeState::GaussianModeState(ModeGrid grid, std::vector<double> qq,
                                     std::vector<double> pp, std::vector<double> qp_sym,
                                     circuits::PhysicalConstants consts)
    : grid_(std::move(grid)),
      qq_(std::move(qq)),
      pp_(std::move(pp)),
      qp_(std::move(qp_sym)),
      consts_(consts) {
    const std::size_t n = grid_.size();
    if (qq_.size() != n || pp_.size() != n || qp_.size() != n) {
        throw std::invalid_argument("GaussianModeState: moment arrays must match grid size");
    }
    const double bound = 0.25 * consts_.hbar() * consts_.hbar();
    for (std::size_t i = 0; i < n; ++i) {
        if (!(qq_[i] > 0.0) || !(pp_[i] > 0.0)) {
            throw std::invalid_argument("GaussianModeState: qq and pp must be > 0 at mode " +
                                        std::to_string(i));
        }
        const double det = qq_[i] * pp_[i] - qp_[i] * qp_[i];
        if (det < bound * (1.0 - kHeisenbergRelTol)) {
            throw std::invalid_argument("GaussianModeState: Heisenberg bound violated at mode " +
                                        std::to_string(i));
        }
    }
}

SqueezeProfile::SqueezeProfile(ModeGrid grid, std::vector<double> exponents, double scale)
    : grid_(std::move(grid)), f_(std::move(exponents)), u_(scale) {
    if (f_.size() != grid_.size()) {
        throw std::invalid_argument("SqueezeProfile: exponent count must match grid size");
    }
    for (std::size_t i = 0; i < f_.size(); ++i) {
        if (!std::isfinite(f_[i])) {
            throw std::invalid_argument("SqueezeProfile: non-finite exponent at mode " +
                                        std::to_string(i));
        }
        if (u_ == 0.0 && f_[i] != 0.0) {
            throw std::invalid_argument("SqueezeProfile: exponents must vanish at scale u = 0");
        }
    }
}

SqueezeProfile SqueezeProfile::identity(const ModeGrid& grid) {
    return SqueezeProfile(grid, std::vector<double>(grid.size(), 0.0), 0.0);
}

double cutoff_frequency(const circuits::TransmissionLineSpec& line, double cutoff) {
    return cutoff / line.inductance_per_length() * line.impedance();
}

GaussianModeState ir_vacuum(const circuits::TransmissionLineSpec& line, const ModeGrid& grid,
                            const circuits::PhysicalConstants& consts) {
    const double hbar = consts.hbar();
    const double lt = line.inductance_per_length();
    const double omega_cut = cutoff_frequency(line, grid.cutoff());
    const std::size_t n = grid.size();
    return GaussianModeState(grid, std::vector<double>(n, hbar / (2.0 * lt * omega_cut)),
                             std::vector<double>(n, lt * hbar * omega_cut / 2.0),
                             std::vector<double>(n, 0.0), consts);
}

GaussianModeState apply_squeeze(const GaussianModeState& state, const SqueezeProfile& profile) {
    require_same_grid(state.grid(), profile.grid(), "apply_squeeze");
    const std::size_t n = state.grid().size();
    std::vector<double> qq(n);
    std::vector<double> pp(n);
    std::vector<double> qp(state.qp_sym().begin(), state.qp_sym().end());
    for (std::size_t i = 0; i < n; ++i) {
        const double f = profile.exponents()[i];
        qq[i] = std::exp(-2.0 * f) * state.qq()[i];
        pp[i] = std::exp(2.0 * f) * state.pp()[i];
    }
    return GaussianModeState(state.grid(), std::move(qq), std::move(pp), std::move(qp),
                             circuits::PhysicalConstants(state.hbar()));
}

std::vector<double> uncertainty_products(const GaussianModeState& state) {
    std::vector<double> out(state.grid().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = state.qq()[i] * state.pp()[i] - state.qp_sym()[i] * state.qp_sym()[i];
    }
    return out;
}

std::vector<double> entangler_variance_per_mode(const GaussianModeState& state, double chi) {
    const double hbar2 = state.hbar() * state.hbar();
    std::vector<double> out(state.grid().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double qp = state.qp_sym()[i];
        const double wick = state.qq()[i] * state.pp()[i] + qp * qp + 0.25 * hbar2;
        // (chi/hbar)^2 Var((QP+PQ)/2), normalised by the vacuum factor 1/2.
        out[i] = chi * chi * (2.0 * wick / hbar2);
    }
    return out;
}

double entangler_variance(const GaussianModeState& state, double chi) {
    // chi^2 is applied last so the result is exactly quadratic in chi.
    const auto unit = entangler_variance_per_mode(state, 1.0);
    double sum = 0.0;
    for (double v : unit) sum += v;
    return chi * chi * (sum / static_cast<double>(unit.size()));
}

}  // namespace txh::field
