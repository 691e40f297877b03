#include "txh/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "txh/circuits.hpp"
#include "txh/cmera.hpp"
#include "txh/holography.hpp"
#include "txh/network_config.hpp"
#include "txh/numerics/minimize.hpp"
#include "txh/numerics/quadrature.hpp"
#include "txh/parallel.hpp"
#include "txh/report.hpp"
#include "txh/scattering.hpp"

namespace txh::cli {

namespace {

struct NonFiniteResult : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Overflow or cancellation anywhere in the table is a numerical failure, not data.
void require_finite(const io::Report& r) {
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        for (std::size_t j = 0; j < r.rows[i].size(); ++j) {
            const auto* v = std::get_if<double>(&r.rows[i][j]);
            if (v && !std::isfinite(*v)) {
                throw NonFiniteResult("non-finite " + r.columns.at(j) + " in row " + std::to_string(i + 1));
            }
        }
    }
}

using io::Flag;
using io::Report;
using io::Value;

constexpr double kLargeQ = 10.0;
constexpr double kUnloadedFlagTol = 1e-5;
constexpr double kLambdaFlagTol = 1e-9;

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Common {
    std::string out;
    std::string format = "csv";
    bool natural_units = false;
    bool si_units = false;
    std::optional<double> hbar;
    bool timestamp = false;

    circuits::PhysicalConstants consts() const {
        if (hbar) {
            if (!(*hbar > 0.0) || !std::isfinite(*hbar)) throw ConfigError("--hbar must be > 0");
            return circuits::PhysicalConstants{*hbar};
        }
        return si_units ? circuits::PhysicalConstants::si() : circuits::PhysicalConstants::natural();
    }

    std::string units() const {
        if (hbar) return "custom";
        return si_units ? "si" : "natural";
    }
};

struct Sweep {
    std::optional<double> min;
    std::optional<double> max;
    int steps = 64;
    std::string spacing = "log";
};

std::vector<double> expand(const Sweep& s, double default_min, double default_max,
                           const std::string& name) {
    const double lo = s.min.value_or(default_min);
    const double hi = s.max.value_or(default_max);
    if (s.steps < 2) throw ConfigError("--steps must be >= 2 (got " + std::to_string(s.steps) + ")");
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw ConfigError("--" + name + "-min must be < --" + name + "-max");
    }
    std::vector<double> out(static_cast<std::size_t>(s.steps));
    const double n = static_cast<double>(s.steps - 1);
    if (s.spacing == "log") {
        if (!(lo > 0.0)) throw ConfigError("--" + name + "-min must be > 0 for log spacing");
        const double a = std::log(lo);
        const double b = std::log(hi);
        for (int i = 0; i < s.steps; ++i) out[i] = std::exp(a + (b - a) * i / n);
        out.front() = lo;
        out.back() = hi;
    } else {
        for (int i = 0; i < s.steps; ++i) out[i] = lo + (hi - lo) * i / n;
        out.back() = hi;
    }
    return out;
}

void add_sweep(CLI::App* sub, Sweep& s, const std::string& name) {
    sub->add_option("--" + name + "-min", s.min, "Sweep start");
    sub->add_option("--" + name + "-max", s.max, "Sweep end");
    sub->add_option("--steps", s.steps, "Number of sweep samples (>= 2)");
    sub->add_option("--spacing", s.spacing, "Sweep spacing")->check(CLI::IsMember({"log", "linear"}));
}

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--out", c.out, "Report path (stdout when omitted)");
    sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
    auto* nat = sub->add_flag("--natural-units", c.natural_units, "hbar = 1 (default)");
    auto* si = sub->add_flag("--si", c.si_units, "SI value of hbar");
    nat->excludes(si);
    sub->add_option("--hbar", c.hbar, "Explicit hbar, overrides the unit system");
    sub->add_flag("--timestamp", c.timestamp, "Add a generation timestamp to the metadata");
}

struct LineOpts {
    double lt = 1.0;
    double ct = 1.0;
    std::optional<double> end_l;
    std::optional<double> end_c;

    circuits::TransmissionLineSpec line() const { return {lt, ct}; }
    std::optional<circuits::EndpointLCSpec> endpoint() const {
        if (end_l.has_value() != end_c.has_value()) {
            throw ConfigError("--end-l and --end-c must be given together");
        }
        if (!end_l) return std::nullopt;
        return circuits::EndpointLCSpec{*end_l, *end_c};
    }
};

void add_line(CLI::App* sub, LineOpts& o) {
    sub->add_option("--line-l", o.lt, "Line inductance per length L_T");
    sub->add_option("--line-c", o.ct, "Line capacitance per length C_T");
    sub->add_option("--end-l", o.end_l, "Endpoint inductance L");
    sub->add_option("--end-c", o.end_c, "Endpoint capacitance C");
}

void echo_line(Report& r, const circuits::TransmissionLineSpec& line,
               const std::optional<circuits::EndpointLCSpec>& ep) {
    r.param("L_T", line.inductance_per_length());
    r.param("C_T", line.capacitance_per_length());
    r.param("Z_T", line.impedance());
    r.param("v", line.velocity());
    r.param("R", line.resistance());
    if (ep) {
        r.param("L", ep->inductance());
        r.param("C", ep->capacitance());
        r.param("omega_0", ep->resonance());
        const double q = circuits::q_factor(*ep, line);
        r.param("q", q);
        r.param("regime", scattering::to_string(scattering::QFactorRegime(q).regime()));
    }
}

Report start(const std::string& command, const Common& c) {
    Report r;
    r.command = command;
    r.version = kVersion;
    r.param("units", c.units());
    r.param("hbar", c.consts().hbar());
    return r;
}

// ---------------------------------------------------------------- line

struct LineCmd {
    LineOpts line;
    Sweep k;
};

Report run_line(const LineCmd& o, const Common& c) {
    Report r = start("line", c);
    const auto line = o.line.line();
    const auto ep = o.line.endpoint();
    echo_line(r, line, ep);
    const auto ks = expand(o.k, 1e-2, 1e2, "k");
    r.columns = {"k", "omega_k"};
    for (double k : ks) r.rows.push_back({k, circuits::dispersion(line, k)});
    return r;
}

// ---------------------------------------------------------------- scatter

struct ScatterCmd {
    LineOpts line;
    std::string network;
    std::vector<double> omega;
    Sweep sweep;
};

Report run_scatter(const ScatterCmd& o, const Common& c) {
    Report r = start("scatter", c);
    const auto consts = c.consts();
    std::optional<scattering::JunctionSpec> junction;
    if (!o.network.empty()) {
        auto cfg = io::parse_network(o.network, consts);
        junction.emplace(cfg.junction);
        r.param("network", o.network);
    } else {
        const auto ep = o.line.endpoint();
        if (!ep) throw ConfigError("scatter needs --network or --end-l/--end-c");
        junction.emplace(std::vector{o.line.line()},
                         scattering::RealMatrix::Constant(1, 1, ep->inductance()),
                         scattering::RealMatrix::Constant(1, 1, 1.0 / ep->capacitance()), consts);
    }
    const std::size_t n = junction->size();
    r.param("lines", static_cast<long long>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const auto& l = junction->lines()[i];
        const std::string p = "line" + std::to_string(i + 1) + ".";
        r.param(p + "L_T", l.inductance_per_length());
        r.param(p + "C_T", l.capacitance_per_length());
        r.param(p + "R", l.resistance());
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const std::string ij = std::to_string(i + 1) + "_" + std::to_string(j + 1);
            r.param("L_" + ij, junction->mutual_inductance()(i, j));
            r.param("E_" + ij, junction->elastance()(i, j));
        }
    r.param("convention_sign", -1.0);

    std::vector<double> omegas = o.omega;
    if (omegas.empty()) omegas = expand(o.sweep, 1e-3, 1e3, "omega");
    for (double w : omegas) {
        if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("--omega values must be > 0");
    }

    std::vector<scattering::ScatterSample> samples(omegas.size());
    parallel_for(omegas.size(), [&](std::size_t i) {
        samples[i] = scattering::network_s_matrix(omegas[i], *junction);
    });

    r.columns = {"omega", "i", "j", "s_re", "s_im", "s_abs", "unitarity_defect"};
    for (const auto& s : samples) {
        const double defect = scattering::unitarity_defect(s.s_matrix);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const auto v = s.s_matrix(i, j);
                r.rows.push_back({s.omega, static_cast<long long>(i + 1), static_cast<long long>(j + 1),
                                  v.real(), v.imag(), std::abs(v), defect});
            }
    }
    return r;
}

// ---------------------------------------------------------------- variance

struct VarianceCmd {
    std::vector<double> q;
    Sweep sweep;
    double resistance = 1.0;
    double gamma = 1.0;
    std::optional<double> lambda_cutoff;
    double lt_over_l = 1.0;
};

Report run_variance(const VarianceCmd& o, const Common& c) {
    Report r = start("variance", c);
    const double hbar = c.consts().hbar();
    if (!(o.resistance > 0.0)) throw ConfigError("--R must be > 0");
    r.param("R", o.resistance);
    if (o.lambda_cutoff) {
        if (!(*o.lambda_cutoff > 0.0)) throw ConfigError("--lambda-cutoff must be > 0");
        if (!(o.lt_over_l > 0.0)) throw ConfigError("--lt-over-l must be > 0");
        r.param("gamma", o.gamma);
        r.param("lambda_cutoff", *o.lambda_cutoff);
        r.param("lt_over_l", o.lt_over_l);
    }

    std::vector<double> qs = o.q;
    if (qs.empty()) qs = expand(o.sweep, 0.1, 10.0, "q");
    for (double q : qs) {
        if (!(q > 0.0) || !std::isfinite(q)) throw ConfigError("--q values must be > 0");
    }

    struct Row {
        scattering::Regime regime;
        double quad;
        double closed;
        std::optional<double> weighted;
    };
    std::vector<Row> rows(qs.size());
    parallel_for(qs.size(), [&](std::size_t i) {
        const scattering::QFactorRegime reg(qs[i]);
        Row row{reg.regime(), scattering::charge_variance_quadrature(reg, o.resistance, hbar),
                scattering::charge_variance_closed(reg, o.resistance, hbar), std::nullopt};
        if (o.lambda_cutoff) {
            row.weighted = scattering::cmera_weighted_variance(
                {qs[i], o.gamma, *o.lambda_cutoff, o.lt_over_l, o.resistance, hbar});
        }
        rows[i] = row;
    });

    r.columns = {"q",           "regime",        "quadrature", "closed",        "relative_difference",
                 "large_q_ratio", "quoted_value", "flag",      "cmera_weighted"};
    const double pi = std::numbers::pi;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const double q = qs[i];
        const auto& row = rows[i];
        const double rel = std::abs(row.closed - row.quad) / std::abs(row.quad);
        const double ratio = row.quad * 4.0 * o.resistance * q / (pi * hbar);
        Value quoted;
        Value flag = std::string();
        if (row.regime == scattering::Regime::critical) {
            const double v = scattering::charge_variance_critical_quoted(o.resistance, hbar);
            quoted = v;
            flag = std::string("critical_quoted_mismatch");
            r.flags.push_back({"critical_quoted_mismatch",
                               "at q = 1/2 the integral evaluates to hbar/R; the quoted closed "
                               "form pi hbar/(2R) is larger by pi/2",
                               {{"q", q},
                                {"computed", row.quad},
                                {"computed_over_hbar_R", row.quad * o.resistance / hbar},
                                {"quoted", v},
                                {"quoted_over_computed", v / row.quad}}});
        } else if (q >= kLargeQ) {
            const double v = scattering::charge_variance_large_q_quoted(o.resistance, hbar);
            quoted = v;
            flag = std::string("large_q_quoted_mismatch");
            r.flags.push_back({"large_q_quoted_mismatch",
                               "for large q the variance decays as pi hbar/(4 R q); the quoted "
                               "limit pi hbar/(4R) has no 1/q",
                               {{"q", q},
                                {"computed", row.quad},
                                {"quoted", v},
                                {"scaled_ratio", ratio}}});
        }
        Value weighted;
        if (row.weighted) weighted = *row.weighted;
        r.rows.push_back({q, scattering::to_string(row.regime), row.quad, row.closed, rel, ratio,
                          quoted, flag, weighted});
    }
    return r;
}

// ---------------------------------------------------------------- cmera

struct CmeraCmd {
    LineOpts line;
    double lambda_cutoff = 1.0;
    double u_min = -12.0;
    int modes = 512;
    std::string table = "modes";
    std::string chi_model = "holographic";
    int steps = 64;
};

Report run_cmera(const CmeraCmd& o, const Common& c) {
    Report r = start("cmera", c);
    if (o.modes < 2) throw ConfigError("--modes must be >= 2");
    const auto line = o.line.line();
    const auto ep = o.line.endpoint();
    const auto cfg = cmera::FlowConfig::make(line, o.lambda_cutoff, ep, o.u_min,
                                             static_cast<std::size_t>(o.modes), c.consts());
    echo_line(r, line, ep);
    r.param("lambda_cutoff", o.lambda_cutoff);
    r.param("u_min", o.u_min);
    r.param("modes", static_cast<long long>(o.modes));
    r.param("omega_lambda", cfg.cutoff_frequency());
    if (ep) r.param("endpoint_loading", cfg.endpoint_loading());
    const auto functional = ep ? cmera::Functional::endpoint : cmera::Functional::free_line;
    r.param("functional", std::string(ep ? "endpoint" : "free_line"));

    if (o.table == "modes") {
        const auto result = cmera::minimize_per_mode(cfg, functional);
        const auto coeffs = cmera::mode_coefficients(cfg, functional);
        const auto approx = ep ? cmera::f_endpoint_unloaded(cfg) : cmera::f_free_closed(cfg);
        r.param("energy", result.energy);
        if (result.chi.resolution_warning) {
            r.flags.push_back({"chi_resolution",
                               "fewer than 64 modes; chi(s) from finite differences is coarse",
                               {{"modes", static_cast<long long>(o.modes)}}});
        }
        r.columns = {"k",        "omega_k",          "f_star",         "f_stationary",
                     "f_closed_approx", "approx_minus_star", "energy_slope", "chi_numeric"};
        double worst = 0.0;
        for (std::size_t i = 0; i < cfg.grid.size(); ++i) {
            const double k = cfg.grid[i];
            const double diff = approx[i] - result.f_star[i];
            worst = std::max(worst, std::abs(diff));
            r.rows.push_back({k, circuits::dispersion(line, k), result.f_star[i],
                              coeffs[i].stationary(), approx[i], diff,
                              coeffs[i].slope(result.f_star[i]), result.chi.chi[i]});
        }
        if (ep && worst > kUnloadedFlagTol) {
            r.flags.push_back({"unloaded_approximation",
                               "the closed-form optimum drops the (1 + L_T Lambda / L) loading of "
                               "the Phi term and departs from the exact minimiser",
                               {{"endpoint_loading", cfg.endpoint_loading()},
                                {"max_abs_difference", worst}}});
        }
        return r;
    }

    const auto model =
        o.chi_model == "holographic" ? cmera::ChiModel::holographic : cmera::ChiModel::stationary;
    r.param("chi_model", o.chi_model);
    if (o.steps < 2) throw ConfigError("--steps must be >= 2");
    std::vector<double> us(static_cast<std::size_t>(o.steps));
    for (int i = 0; i < o.steps; ++i) us[i] = o.u_min * (1.0 - static_cast<double>(i) / (o.steps - 1));
    std::vector<double> g(us.size());
    parallel_for(us.size(), [&](std::size_t i) { g[i] = cmera::metric_uu(cfg, us[i], model); });
    r.columns = {"u", "chi", "chi_squared", "g_uu"};
    for (std::size_t i = 0; i < us.size(); ++i) {
        const double chi = cmera::chi_at(cfg, us[i], model);
        r.rows.push_back({us[i], chi, chi * chi, g[i]});
    }
    return r;
}

// ---------------------------------------------------------------- geometry

struct GeometryCmd {
    double beta = 0.0;
    double epsilon = 1.0;
    Sweep z;
    std::string derivative = "analytic";
};

Report run_geometry(const GeometryCmd& o, const Common& c) {
    Report r = start("geometry", c);
    const holography::MetricFamily family{o.beta, o.epsilon};
    family.validate();
    r.param("beta", o.beta);
    r.param("epsilon", o.epsilon);
    r.param("derivative", o.derivative);
    const auto zs = expand(o.z, 0.1, 10.0, "z");
    const auto mode = o.derivative == "dual" ? holography::DerivativeMode::dual
                                             : holography::DerivativeMode::analytic;
    const auto report = holography::curvature_report(family, zs, mode);
    r.columns = {"z",        "g_zz",     "g_xx",     "g_tt",         "ricci_zz",
                 "ricci_xx", "ricci_tt", "scalar",   "lambda",       "lambda_traceless",
                 "T_zz",     "T_xx",     "T_tt"};
    double worst = 0.0;
    double worst_z = 0.0;
    for (const auto& p : report.points) {
        const double d = std::abs(p.lambda - p.lambda_traceless) / std::max(1.0, std::abs(p.lambda));
        if (d > worst) {
            worst = d;
            worst_z = p.z;
        }
        r.rows.push_back({p.z, p.metric[0], p.metric[1], p.metric[2], p.ricci[0], p.ricci[1],
                          p.ricci[2], p.scalar, p.lambda, p.lambda_traceless, p.stress[0],
                          p.stress[1], p.stress[2]});
    }
    if (worst > kLambdaFlagTol) {
        r.flags.push_back({"lambda_trace_mismatch",
                           "lambda = -4(1 + x + 2x^2)/(1 + x), x = beta eps^2 / z^2, differs "
                           "from R/6, so T = G + lambda g is not traceless",
                           {{"max_relative_difference", worst}, {"at_z", worst_z}}});
    }
    return r;
}

// ---------------------------------------------------------------- propagator

struct PropagatorCmd {
    double beta = 0.0;
    double epsilon = 1.0;
    double c = 1.0;
    Sweep z;
    std::string boundary;
    std::vector<double> z_points;
    std::vector<double> x;
    std::vector<double> t;
};

Report run_propagator(const PropagatorCmd& o, const Common& common) {
    Report r = start("propagator", common);
    const holography::MetricFamily family{o.beta, o.epsilon};
    family.validate();
    const double beta_hat = family.propagator_coefficient();
    r.param("beta", o.beta);
    r.param("epsilon", o.epsilon);
    r.param("beta_hat", beta_hat);
    r.param("c", o.c);

    if (o.boundary.empty()) {
        const holography::Propagator prop{beta_hat, o.c};
        const auto zs = expand(o.z, 1e-3, 1e3, "z");
        r.columns = {"z", "K", "flux", "flux_residual"};
        for (double z : zs) r.rows.push_back({z, prop.value(z), prop.flux(z), prop.flux_residual(z)});
        return r;
    }

    r.param("boundary", o.boundary);
    const auto phi0 = holography::BoundaryField::from_csv(o.boundary);
    r.param("boundary_nx", static_cast<long long>(phi0.nx()));
    r.param("boundary_nt", static_cast<long long>(phi0.nt()));
    const std::vector<double> zs = o.z_points.empty() ? std::vector<double>{0.5, 1.0, 2.0} : o.z_points;
    const std::vector<double> xs = o.x.empty() ? std::vector<double>{0.0} : o.x;
    const std::vector<double> ts = o.t.empty() ? std::vector<double>{0.0} : o.t;

    struct Point {
        double z, x, t;
    };
    std::vector<Point> pts;
    for (double z : zs)
        for (double x : xs)
            for (double t : ts) pts.push_back({z, x, t});
    std::vector<holography::BulkValue> vals(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        vals[i] = holography::boundary_to_bulk(phi0, pts[i].z, pts[i].x, pts[i].t, beta_hat, o.c);
    });
    r.columns = {"z", "x", "t", "value", "captured_mass", "kernel_mass", "truncation_warning"};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        const auto& v = vals[i];
        r.rows.push_back({p.z, p.x, p.t, v.value, v.captured_mass,
                          holography::kernel_total_mass(p.z, beta_hat), v.truncation_warning});
        if (v.truncation_warning) {
            r.flags.push_back({"kernel_truncation",
                               "more than 1% of the kernel mass lies outside the boundary samples",
                               {{"z", p.z}, {"x", p.x}, {"t", p.t}, {"captured_mass", v.captured_mass}}});
        }
    }
    return r;
}

// ---------------------------------------------------------------- entropy

struct EntropyCmd {
    double a = 1.0;
    std::vector<double> xi;
};

Report run_entropy(const EntropyCmd& o, const Common& c) {
    Report r = start("entropy", c);
    r.param("a", o.a);
    const std::vector<double> xis = o.xi.empty() ? std::vector<double>{10.0} : o.xi;
    r.columns = {"a", "xi", "closed", "quadrature", "abs_difference"};
    for (double xi : xis) {
        const auto len = holography::geodesic_log_length(o.a, xi);
        r.rows.push_back({o.a, xi, len.closed, len.quadrature, std::abs(len.closed - len.quadrature)});
    }
    return r;
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Transmission-line, entanglement-flow and emergent-geometry numerics", "txh"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Common common;
    std::function<Report()> job;
    std::string op;

    LineCmd line;
    auto* s_line = app.add_subcommand("line", "Line quantities and dispersion");
    add_line(s_line, line.line);
    add_sweep(s_line, line.k, "k");
    add_common(s_line, common);
    s_line->callback([&] { op = "line"; job = [&] { return run_line(line, common); }; });

    ScatterCmd scatter;
    auto* s_scatter = app.add_subcommand("scatter", "Scattering matrix of a junction");
    add_line(s_scatter, scatter.line);
    s_scatter->add_option("--network", scatter.network, "Network config file")->check(CLI::ExistingFile);
    s_scatter->add_option("--omega", scatter.omega, "Frequencies");
    add_sweep(s_scatter, scatter.sweep, "omega");
    add_common(s_scatter, common);
    s_scatter->callback([&] { op = "network_s_matrix"; job = [&] { return run_scatter(scatter, common); }; });

    VarianceCmd variance;
    auto* s_var = app.add_subcommand("variance", "Endpoint charge variance");
    s_var->add_option("--q", variance.q, "Q-factors");
    add_sweep(s_var, variance.sweep, "q");
    s_var->add_option("--R", variance.resistance, "Line resistance");
    s_var->add_option("--gamma", variance.gamma, "Flow prefactor for the weighted variance");
    s_var->add_option("--lambda-cutoff", variance.lambda_cutoff, "Cutoff; enables the weighted variance");
    s_var->add_option("--lt-over-l", variance.lt_over_l, "L_T / L for the weighted variance");
    add_common(s_var, common);
    s_var->callback([&] { op = "charge_variance"; job = [&] { return run_variance(variance, common); }; });

    CmeraCmd cm;
    auto* s_cm = app.add_subcommand("cmera", "Variational squeeze and flow tables");
    add_line(s_cm, cm.line);
    s_cm->add_option("--lambda-cutoff", cm.lambda_cutoff, "Wavenumber cutoff Lambda");
    s_cm->add_option("--u-min", cm.u_min, "IR end of the flow");
    s_cm->add_option("--modes", cm.modes, "Grid size");
    s_cm->add_option("--table", cm.table, "Output table")->check(CLI::IsMember({"modes", "flow"}));
    s_cm->add_option("--chi-model", cm.chi_model, "Entangler profile for the flow table")
        ->check(CLI::IsMember({"holographic", "stationary"}));
    s_cm->add_option("--steps", cm.steps, "Scale samples in the flow table");
    add_common(s_cm, common);
    s_cm->callback([&] { op = "cmera"; job = [&] { return run_cmera(cm, common); }; });

    GeometryCmd geo;
    auto* s_geo = app.add_subcommand("geometry", "Curvature of the emergent metric");
    s_geo->add_option("--beta", geo.beta, "Coupling beta");
    s_geo->add_option("--epsilon", geo.epsilon, "Short-distance scale");
    s_geo->add_option("--derivative", geo.derivative, "Metric derivatives")
        ->check(CLI::IsMember({"analytic", "dual"}));
    add_sweep(s_geo, geo.z, "z");
    add_common(s_geo, common);
    s_geo->callback([&] { op = "curvature_report"; job = [&] { return run_geometry(geo, common); }; });

    PropagatorCmd prop;
    auto* s_prop = app.add_subcommand("propagator", "Radial propagator and boundary-to-bulk map");
    s_prop->add_option("--beta", prop.beta, "Coupling beta (beta_hat = beta / eps^2)");
    s_prop->add_option("--epsilon", prop.epsilon, "Short-distance scale");
    s_prop->add_option("--c", prop.c, "Propagator normalisation");
    add_sweep(s_prop, prop.z, "z");
    s_prop->add_option("--boundary", prop.boundary, "Boundary data CSV (x,t,phi0)")->check(CLI::ExistingFile);
    s_prop->add_option("--z", prop.z_points, "Bulk depths for --boundary");
    s_prop->add_option("--x", prop.x, "Bulk x for --boundary");
    s_prop->add_option("--t", prop.t, "Bulk t for --boundary");
    add_common(s_prop, common);
    s_prop->callback([&] { op = "propagator"; job = [&] { return run_propagator(prop, common); }; });

    EntropyCmd ent;
    auto* s_ent = app.add_subcommand("entropy", "Radial geodesic log-length");
    s_ent->add_option("--a", ent.a, "Short-distance cutoff");
    s_ent->add_option("--xi", ent.xi, "Upper lengths");
    add_common(s_ent, common);
    s_ent->callback([&] { op = "geodesic_log_length"; job = [&] { return run_entropy(ent, common); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : config_error;
    }

    try {
        Report report = job();
        require_finite(report);
        if (common.timestamp) report.timestamp = utc_now();
        const std::string text = common.format == "json" ? io::to_json(report) : io::to_csv(report);
        if (common.out.empty()) {
            out << text;
        } else {
            io::write_atomic(common.out, text);
        }
        return ok;
    } catch (const io::NetworkConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const numerics::BracketError& e) {
        err << "numerical failure in " << op << ": " << e.what() << '\n';
        return numerical_error;
    } catch (const std::invalid_argument& e) {
        err << "config error in " << op << ": " << e.what() << '\n';
        return config_error;
    } catch (const numerics::QuadratureError& e) {
        err << "numerical failure in " << op << ": " << e.what() << '\n';
        return numerical_error;
    } catch (const scattering::SingularFrequencyError& e) {
        err << "numerical failure in " << op << ": " << e.what() << " (omega = " << e.omega() << ")\n";
        return numerical_error;
    } catch (const numerics::ConvergenceError& e) {
        err << "numerical failure in " << op << ": " << e.what() << '\n';
        return numerical_error;
    } catch (const scattering::BranchError& e) {
        err << "numerical failure in " << op << ": " << e.what() << '\n';
        return numerical_error;
    } catch (const NonFiniteResult& e) {
        err << "numerical failure in " << op << ": " << e.what() << '\n';
        return numerical_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return io_failure;
    }
}

}  // namespace txh::cli
