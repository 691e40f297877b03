#include "txh/numerics/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

namespace txh::numerics {

namespace {

// Kronrod abscissae (descending) with Kronrod weights; Gauss weights for the
// odd-indexed nodes, which are the 7-point Gauss-Legendre nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gauss_kronrod(const F& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double pair = f(centre - dx) + f(centre + dx);
        kronrod += kWgk[j] * pair;
        if (j % 2 == 1) gauss += kWg[j / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double lower, double upper,
                           const QuadratureSpec& spec) {
    if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0)) {
        throw std::invalid_argument("integrate: tolerances must be > 0");
    }
    if (std::isnan(lower) || std::isnan(upper) || !std::isfinite(lower) || !(upper > lower)) {
        throw std::invalid_argument("integrate: need finite lower < upper");
    }

    std::function<double(double)> g;
    double a = lower;
    double b = upper;
    const bool semi_infinite =
        std::isinf(upper) || spec.transform == DomainTransform::semi_infinite_rational;
    if (semi_infinite) {
        if (!std::isinf(upper)) {
            throw std::invalid_argument("integrate: semi-infinite transform needs upper = inf");
        }
        g = [&f, lower](double t) {
            const double s = 1.0 - t;
            return f(lower + t / s) / (s * s);
        };
        a = 0.0;
        b = 1.0;
    } else {
        g = f;
    }

    std::priority_queue<Segment> work;
    Segment first = gauss_kronrod(g, a, b);
    double total = first.value;
    double total_error = first.error;
    work.push(first);
    int intervals = 1;

    auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };

    while (total_error > tolerance()) {
        if (intervals >= spec.max_subdivisions) {
            throw QuadratureError("integrate: subdivision budget of " +
                                      std::to_string(spec.max_subdivisions) +
                                      " exhausted (error estimate " + std::to_string(total_error) +
                                      ")",
                                  {total, total_error, intervals});
        }
        Segment worst = work.top();
        work.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Segment left = gauss_kronrod(g, worst.a, mid);
        Segment right = gauss_kronrod(g, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        work.push(left);
        work.push(right);
        ++intervals;
    }

    // Re-sum from the segment list to shed drift from the running updates.
    double sum = 0.0;
    double err = 0.0;
    std::vector<Segment> pieces;
    pieces.reserve(work.size());
    while (!work.empty()) {
        pieces.push_back(work.top());
        work.pop();
    }
    for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {
        sum += it->value;
        err += it->error;
    }
    return {sum, err, intervals};
}

}  // namespace txh::numerics
