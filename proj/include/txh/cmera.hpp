#pragma once

#include <optional>
#include <span>
#include <vector>

#include "txh/circuits.hpp"
#include "txh/gaussian_field.hpp"

namespace txh::cmera {

/// Inputs of the entanglement-renormalisation flow. The IR end u = -inf is
/// truncated at u_min; the grid spans [Lambda e^{u_min}, Lambda].
struct FlowConfig {
    double lambda_cutoff;
    double u_min;
    field::ModeGrid grid;
    circuits::TransmissionLineSpec line;
    std::optional<circuits::EndpointLCSpec> endpoint;
    circuits::PhysicalConstants consts;

    /// Log-uniform grid of `modes` samples; validates the invariants below.
    static FlowConfig make(const circuits::TransmissionLineSpec& line, double lambda_cutoff,
                           std::optional<circuits::EndpointLCSpec> endpoint = std::nullopt,
                           double u_min = -12.0, std::size_t modes = 512,
                           circuits::PhysicalConstants consts = {});

    /// Throws std::invalid_argument unless u_min < 0 and grid.cutoff() == lambda_cutoff.
    void validate() const;

    double cutoff_frequency() const;
    /// L_T Lambda / L, the endpoint loading of the Phi term.
    double endpoint_loading() const;
};

enum class Functional { free_line, endpoint };

/// Per-mode objective (1/4)(a e^{2f} + b e^{-2f}).
struct ModeCoefficients {
    double a;
    double b;

    double energy(double f) const;
    double slope(double f) const;  // d/df
    /// Exact stationary point (1/4) log(b/a).
    double stationary() const;
};

std::vector<ModeCoefficients> mode_coefficients(const FlowConfig& cfg, Functional functional);

/// Grid quadrature of the free-line energy density, per unit hbar.
double energy_free(std::span<const double> f, const FlowConfig& cfg);

/// Grid quadrature of the endpoint-loaded energy density, per unit hbar.
double energy_endpoint(std::span<const double> f, const FlowConfig& cfg);

double energy(std::span<const double> f, const FlowConfig& cfg, Functional functional);

/// chi(s) sampled at the flow boundaries s_i = log(k_i / Lambda).
struct ChiSamples {
    std::vector<double> scale;
    std::vector<double> chi;
    bool resolution_warning = false;  // fewer than 64 modes
};

struct VariationalResult {
    Functional functional;
    std::vector<double> f_star;
    ChiSamples chi;
    double energy;
};

/// Per-mode minimisation by derivative bisection on f in [-30, 30].
VariationalResult minimize_per_mode(const FlowConfig& cfg, Functional functional);

/// Recovers chi(s) = df/ds from f(k, u_IR) = Int_0^{log(k/Lambda)} chi(s) ds with
/// fourth-order finite-difference stencils on the grid.
ChiSamples chi_from_f(std::span<const double> f, const FlowConfig& cfg);
ChiSamples chi_from_f(const VariationalResult& result, const FlowConfig& cfg);

/// Closed-form (1/2) log(omega_k/omega_Lambda); the free-line optimum.
std::vector<double> f_free_closed(const FlowConfig& cfg);

/// Endpoint optimum in the approximation that drops the (1 + L_T Lambda / L)
/// loading of the Phi term:
/// (1/2) log[(omega_k/omega_Lambda) sqrt(1 + (L/L_T) (omega_0^2/omega_k^2) Lambda)].
std::vector<double> f_endpoint_unloaded(const FlowConfig& cfg);

/// Which entangler-strength profile drives the flow at scale u.
enum class ChiModel {
    /// 1 / (2 (1 + (L_T/L) e^{2u} / Lambda)): the form that produces the
    /// emergent endpoint metric; tends to 1/2 as u -> -inf.
    holographic,
    /// d f*/ds of the exact stationary f*:
    /// 1 / (2 (1 + (L/L_T) (omega_0^2 / (v^2 Lambda)) e^{-2u})).
    stationary,
};

/// chi(u). Without an endpoint both models give 1/2.
double chi_at(const FlowConfig& cfg, double u, ChiModel model = ChiModel::holographic);

/// F(s) = Int_0^s chi(s') ds' in closed form.
double chi_integral(const FlowConfig& cfg, double s, ChiModel model = ChiModel::holographic);

/// Accumulated squeeze at scale u: f(k, u) = F(max(u, log(k/Lambda))).
field::SqueezeProfile profile_at(const FlowConfig& cfg, double u,
                                 ChiModel model = ChiModel::holographic);

/// g_uu(u) = Var(K_I(u)) on the flowed state, i.e. chi(u)^2.
double metric_uu(const FlowConfig& cfg, double u, ChiModel model = ChiModel::holographic);

}  // namespace txh::cmera
