// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "txh/cli.hpp"
#include "txh/cmera.hpp"
#include "txh/gaussian_field.hpp"
#include "txh/holography.hpp"
#include "txh/numerics/derivative.hpp"
#include "txh/report.hpp"
#include "txh/scattering.hpp"

using namespace txh;

namespace {

constexpr double kPi = std::numbers::pi;
int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s %2d %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    if (!ok) ++failures;
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

struct CliRun {
    int code;
    std::string out;
};

CliRun cli_run(std::vector<std::string> args) {
    args.insert(args.begin(), "txh");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str()};
}

std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo * std::pow(hi / lo, i / double(n - 1));
    return v;
}

scattering::RealMatrix random_psd(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    scattering::RealMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = d(rng);
    scattering::RealMatrix m = a * a.transpose();
    return 0.5 * (m + m.transpose());
}

void single_line_unimodular() {
    const circuits::EndpointLCSpec ep(0.7, 2.3);
    const double r = 1.3;
    double worst = 0.0;
    for (double w : logspace(1e-3, 1e3, 1000)) {
        worst = std::max(worst, std::abs(std::abs(scattering::single_line_s(w * ep.resonance(), ep, r)) - 1.0));
    }
    report(1, "single-line |S| = 1", worst <= 1e-12, "max ||S|-1| = " + sci(worst) + " over 1000 frequencies");
}

void multiport_unitary() {
    std::mt19937 rng(20240611);
    std::uniform_real_distribution<double> z(0.5, 2.0);
    std::uniform_int_distribution<int> size(2, 4);
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        const int n = size(rng);
        std::vector<circuits::TransmissionLineSpec> lines;
        for (int i = 0; i < n; ++i) {
            const double zt = z(rng);
            lines.emplace_back(zt, 1.0 / zt);
        }
        const scattering::JunctionSpec j(lines, random_psd(rng, n), random_psd(rng, n));
        for (double w : {0.2, 1.0, 6.0}) {
            worst = std::max(worst, scattering::unitarity_defect(scattering::network_s_matrix(w, j).s_matrix));
        }
    }
    report(2, "multiport unitarity", worst <= 1e-10, "max defect = " + sci(worst) + " over 20 junctions x 3 frequencies");
}

void variance_agreement() {
    double worst = 0.0;
    for (double q : {0.1, 0.25, 0.49, 0.51, 0.75, 1.0, 2.0, 5.0, 20.0}) {
        const scattering::QFactorRegime reg(q);
        const double a = scattering::charge_variance_closed(reg, 1.0, 1.0);
        const double b = scattering::charge_variance_quadrature(reg, 1.0, 1.0);
        worst = std::max(worst, std::abs(a - b) / std::abs(b));
    }
    const scattering::QFactorRegime one(1.0);
    const double exact = kPi / (3.0 * std::sqrt(3.0));
    const double dc = std::abs(scattering::charge_variance_closed(one, 1.0, 1.0) - exact);
    const double dq = std::abs(scattering::charge_variance_quadrature(one, 1.0, 1.0) - exact);
    report(3, "closed vs quadrature variance", worst <= 1e-6 && dc <= 1e-8 && dq <= 1e-8,
           "max rel = " + sci(worst) + ", |q=1 - pi/(3 sqrt3)| = " + sci(std::max(dc, dq)));
}

void documented_discrepancies() {
    const auto r = cli_run({"variance", "--q", "0.5", "--q", "100", "--format", "json"});
    bool ok = r.code == 0;
    std::string detail = "exit " + std::to_string(r.code);
    if (ok) {
        const auto j = nlohmann::json::parse(r.out);
        bool crit = false, large = false;
        double computed = 0.0, ratio = 0.0;
        for (const auto& f : j["flags"]) {
            if (f["id"] == "critical_quoted_mismatch") {
                computed = f["computed"].get<double>();
                crit = std::abs(computed - 1.0) <= 1e-6 && std::abs(f["quoted"].get<double>() - kPi / 2.0) <= 1e-12;
            }
            if (f["id"] == "large_q_quoted_mismatch") {
                ratio = f["scaled_ratio"].get<double>();
                large = std::abs(ratio - 1.0) <= 0.01;
            }
        }
        ok = crit && large;
        detail = "critical computed = " + sci(computed) + " vs pi/2, q=100 scaled ratio = " + sci(ratio);
    }
    report(4, "documented variance discrepancies flagged", ok, detail);
}

void cmera_free_line() {
    const auto cfg = cmera::FlowConfig::make({1.0, 1.0}, 1.0, std::nullopt, -12.0, 512);
    const auto r = cmera::minimize_per_mode(cfg, cmera::Functional::free_line);
    double df = 0.0;
    for (std::size_t i = 0; i < cfg.grid.size(); ++i) {
        const double exact = 0.5 * std::log(circuits::dispersion(cfg.line, cfg.grid[i]) / cfg.cutoff_frequency());
        df = std::max(df, std::abs(r.f_star[i] - exact));
    }
    double dchi = 0.0;
    for (double c : r.chi.chi) dchi = std::max(dchi, std::abs(c - 0.5));
    double dg = 0.0;
    for (int i = 0; i <= 120; ++i) dg = std::max(dg, std::abs(cmera::metric_uu(cfg, -12.0 + 0.1 * i) - 0.25));
    report(5, "cMERA free line", df <= 1e-8 && dchi <= 1e-3 && dg <= 1e-9,
           "max |f*-exact| = " + sci(df) + ", max |chi-1/2| = " + sci(dchi) + ", max |g_uu-1/4| = " + sci(dg));
}

void cmera_endpoint() {
    // Strong loading for stationarity and g_uu, L_T Lambda / L = 1e-6 for the unloaded formula.
    const auto strong = cmera::FlowConfig::make({1.0, 1.0}, 1.0, circuits::EndpointLCSpec(1.0, 1.0), -12.0, 512);
    const auto weak = cmera::FlowConfig::make({1.0, 1.0}, 1.0, circuits::EndpointLCSpec(1e6, 1.0), -12.0, 512);
    double slope = 0.0;
    for (const auto* cfg : {&strong, &weak}) {
        const auto r = cmera::minimize_per_mode(*cfg, cmera::Functional::endpoint);
        const auto coeffs = cmera::mode_coefficients(*cfg, cmera::Functional::endpoint);
        for (std::size_t i = 0; i < coeffs.size(); ++i) slope = std::max(slope, std::abs(coeffs[i].slope(r.f_star[i])));
    }
    const auto r = cmera::minimize_per_mode(weak, cmera::Functional::endpoint);
    const auto approx = cmera::f_endpoint_unloaded(weak);
    double dapprox = 0.0;
    for (std::size_t i = 0; i < approx.size(); ++i) dapprox = std::max(dapprox, std::abs(r.f_star[i] - approx[i]));
    double dg = 0.0;
    const double c = strong.line.inductance_per_length() / strong.endpoint->inductance() / strong.lambda_cutoff;
    for (int i = 0; i <= 120; ++i) {
        const double u = -12.0 + 0.1 * i;
        const double weight = 1.0 / (1.0 + c * std::exp(2.0 * u));
        dg = std::max(dg, std::abs(cmera::metric_uu(strong, u) - 0.25 * weight * weight));
    }
    report(6, "cMERA endpoint", slope <= 1e-9 && dapprox <= 1e-5 && dg <= 1e-8,
           "max |dE/df| = " + sci(slope) + ", unloaded max diff = " + sci(dapprox) + ", max g_uu diff = " + sci(dg));
}

void weighted_variance_limit() {
    double worst = 0.0;
    for (double q : {0.75, 1.0, 2.0}) {
        const double limit = scattering::charge_variance_closed(scattering::QFactorRegime(q), 1.0, 1.0);
        const double v = scattering::cmera_weighted_variance({q, 1.0, 1e9, 1.0, 1.0, 1.0});
        worst = std::max(worst, std::abs(v / limit - 1.0));
    }
    report(7, "cMERA-weighted variance limit", worst <= 1e-4, "max rel = " + sci(worst) + " at Lambda = 1e9");
}

void geometry_anchors() {
    const auto zs = logspace(0.1, 10.0, 64);
    double d0 = 0.0, d8 = 0.0, rmin = 1e300, rmax = -1e300;
    for (const auto& p : holography::curvature_report({0.0, 1.0}, zs).points) {
        d0 = std::max(d0, std::abs(p.lambda + 4.0));
        rmin = std::min(rmin, p.scalar);
        rmax = std::max(rmax, p.scalar);
    }
    for (const auto& p : holography::curvature_report({1e-8, 1.0}, zs).points) d8 = std::max(d8, std::abs(p.lambda + 4.0));
    const double spread = (rmax - rmin) / std::abs(oracle::kAdsScalarCurvature);
    const double off = std::abs(rmax - oracle::kAdsScalarCurvature) / std::abs(oracle::kAdsScalarCurvature);
    report(8, "geometry anchors", d0 <= 1e-9 && d8 <= 1e-6 && spread <= 1e-10 && off <= 1e-10,
           "beta=0 |lambda+4| = " + sci(d0) + ", beta=1e-8 |lambda+4| = " + sci(d8) + ", R spread = " + sci(spread) +
               ", |R/-24 - 1| = " + sci(off));
}

void propagator_checks() {
    double residual = 0.0;
    for (double bh : {0.0, 0.1, 1.0, 10.0}) {
        const holography::Propagator p{bh, 1.0};
        for (double z : logspace(1e-3, 1e3, 200)) residual = std::max(residual, std::abs(p.flux_residual(z)));
    }
    const double c = 1.5;
    const auto phi = holography::BoundaryField::sample([](double, double) { return 1.0; }, -40.0, 40.0, 1601, -40.0,
                                                       40.0, 1601);
    double worst = 0.0;
    bool truncated = false;
    for (double z : {0.5, 1.0, 2.0}) {
        const auto v = holography::boundary_to_bulk(phi, z, 0.0, 0.0, 0.0, c);
        worst = std::max(worst, std::abs(v.value / (c * kPi) - 1.0));
        truncated = truncated || v.truncation_warning;
    }
    report(9, "propagator", residual <= 1e-12 && worst <= 5e-3 && !truncated,
           "max flux residual = " + sci(residual) + ", max |value/(c pi) - 1| = " + sci(worst));
}

void gaussian_invariants() {
    using namespace field;
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    const auto grid = ModeGrid::log_uniform(1.0, -8.0, 64);
    auto profile = [&] {
        std::vector<double> f(grid.size());
        for (auto& x : f) x = d(rng);
        return SqueezeProfile(grid, f, -1.0);
    };
    const double hbar = 1.3;
    auto s = ir_vacuum({1.5, 0.8}, grid, circuits::PhysicalConstants(hbar));
    double unc = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        s = apply_squeeze(s, profile());
        for (double p : uncertainty_products(s)) unc = std::max(unc, std::abs(p / (hbar * hbar / 4.0) - 1.0));
    }
    double group = 0.0;
    for (int rep = 0; rep < 10; ++rep) {
        const auto a = profile(), b = profile();
        std::vector<double> sum(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) sum[i] = a.exponents()[i] + b.exponents()[i];
        const auto two = apply_squeeze(apply_squeeze(s, a), b);
        const auto one = apply_squeeze(s, SqueezeProfile(grid, sum, -1.0));
        for (std::size_t i = 0; i < grid.size(); ++i) {
            group = std::max({group, std::abs(two.qq()[i] / one.qq()[i] - 1.0), std::abs(two.pp()[i] / one.pp()[i] - 1.0),
                              std::abs(two.qp_sym()[i] - one.qp_sym()[i])});
        }
    }
    // Correlated pure modes so the qp term contributes.
    const ModeGrid g5(1.0, {0.2, 0.4, 0.6, 0.8, 1.0});
    const double h = 0.8;
    std::vector<double> qq{0.4, 1.0, 0.2, 3.0, 0.5}, qp{0.0, 0.3, -0.1, 1.2, 0.05}, pp;
    for (std::size_t i = 0; i < qq.size(); ++i) pp.push_back((h * h / 4.0 + qp[i] * qp[i]) / qq[i]);
    const GaussianModeState st(g5, qq, pp, qp, circuits::PhysicalConstants(h));
    const auto wick = entangler_variance_per_mode(st, 0.37);
    double path = 0.0;
    for (std::size_t i = 0; i < qq.size(); ++i) {
        const double fid = oracle::fidelity_metric(qq[i], pp[i], qp[i], 0.37, h);
        path = std::max(path, std::abs(wick[i] / fid - 1.0));
    }
    report(10, "Gaussian invariants", unc <= 1e-13 && group <= 1e-12 && path <= 1e-6,
           "uncertainty = " + sci(unc) + ", group law = " + sci(group) + ", two-path = " + sci(path));
}

void log_length() {
    double worst = 0.0, additivity = 0.0;
    for (double a : {1e-6, 1e-3, 0.5}) {
        for (double xi : {1.0, 10.0, 1e4}) {
            if (xi <= a) continue;
            const auto l = holography::geodesic_log_length(a, xi);
            worst = std::max({worst, std::abs(l.quadrature - std::log(xi / a)), std::abs(l.closed - std::log(xi / a))});
        }
    }
    for (auto [a, b, c] : {std::tuple{1e-3, 0.2, 7.0}, std::tuple{0.5, 2.0, 1e3}, std::tuple{1e-6, 1.0, 1e6}}) {
        const double lhs = holography::geodesic_log_length(a, c).closed;
        const double rhs = holography::geodesic_log_length(a, b).closed + holography::geodesic_log_length(b, c).closed;
        additivity = std::max(additivity, std::abs(lhs - rhs) / std::abs(lhs));
    }
    // A few ulps of rounding in the log sums.
    report(11, "geodesic log-length", worst <= 1e-10 && additivity <= 4 * 2.2e-16,
           "max |L - log(xi/a)| = " + sci(worst) + ", additivity rel = " + sci(additivity));
}

void determinism() {
    const std::vector<std::vector<std::string>> runs{
        {"variance", "--q-min", "0.1", "--q-max", "50", "--steps", "25", "--lambda-cutoff", "1e6"},
        {"scatter", "--line-l", "1", "--line-c", "1", "--end-l", "0.7", "--end-c", "2.3", "--steps", "50",
         "--format", "json"},
        {"cmera", "--end-l", "1", "--end-c", "1", "--modes", "256"},
        {"geometry", "--beta", "0.3"},
        {"propagator", "--beta", "1", "--format", "json"},
        {"entropy", "--a", "0.01", "--xi", "5", "--xi", "50"},
    };
    bool ok = true;
    std::string bad;
    for (const auto& args : runs) {
        auto a = args, b = args;
        a.push_back("--timestamp");
        const auto ra = cli_run(a), rb = cli_run(b);
        const bool same = ra.code == 0 && rb.code == 0 && ra.out != rb.out &&
                          io::data_section(ra.out) == io::data_section(rb.out);
        if (!same) {
            ok = false;
            bad += " " + args[0];
        }
    }
    report(12, "deterministic CLI output", ok, ok ? "6 subcommands byte-identical across runs" : "differs:" + bad);
}

}  // namespace

int main() {
    single_line_unimodular();
    multiport_unitary();
    variance_agreement();
    documented_discrepancies();
    cmera_free_line();
    cmera_endpoint();
    weighted_variance_limit();
    geometry_anchors();
    propagator_checks();
    gaussian_invariants();
    log_length();
    determinism();
    std::printf("%d of 12 criteria passed\n", 12 - failures);
    return failures == 0 ? 0 : 1;
}
