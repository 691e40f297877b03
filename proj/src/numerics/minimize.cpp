#include "txh/numerics/minimize.hpp"

#include <cmath>
#include <string>

namespace txh::numerics {

double minimize_scalar(const std::function<double(double)>& g, Bracket bracket, double tol,
                       int max_iterations) {
    if (!(bracket.lower < bracket.upper)) {
        throw BracketError("minimize_scalar: bracket must satisfy lower < upper");
    }
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = bracket.lower;
    double b = bracket.upper;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double gc = g(c);
    double gd = g(d);
    int iterations = 0;
    while (b - a > tol) {
        if (++iterations > max_iterations) {
            throw ConvergenceError("minimize_scalar: no convergence after " +
                                   std::to_string(max_iterations) + " iterations");
        }
        if (gc < gd) {
            b = d;
            d = c;
            gd = gc;
            c = b - inv_phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + inv_phi * (b - a);
            gd = g(d);
        }
    }
    const double x = 0.5 * (a + b);
    const double edge = 2.0 * tol;
    if (x - bracket.lower <= edge || bracket.upper - x <= edge) {
        throw BracketError("minimize_scalar: minimum not interior to [" +
                           std::to_string(bracket.lower) + ", " + std::to_string(bracket.upper) +
                           "]");
    }
    return x;
}

double minimize_convex(const std::function<double(double)>& dg, Bracket bracket, double tol,
                       int max_iterations) {
    double lo = bracket.lower;
    double hi = bracket.upper;
    if (!(lo < hi)) {
        throw BracketError("minimize_convex: bracket must satisfy lower < upper");
    }
    if (!(dg(lo) < 0.0) || !(dg(hi) > 0.0)) {
        throw BracketError("minimize_convex: derivative does not change sign on [" +
                           std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    for (int i = 0; i < max_iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= tol || mid == lo || mid == hi) return mid;
        const double slope = dg(mid);
        if (slope == 0.0) return mid;
        (slope > 0.0 ? hi : lo) = mid;
    }
    throw ConvergenceError("minimize_convex: no convergence after " +
                           std::to_string(max_iterations) + " iterations");
}

}  // namespace txh::numerics
