#include "txh/numerics/derivative.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace txh::numerics {

double difference_step(double x, int order) {
    const double base = order == 1 ? 1e-6 : 1e-4;
    return std::max(base, base * std::abs(x));
}

double derivative(const std::function<double(double)>& f, double x, int order) {
    if (order != 1 && order != 2) {
        throw std::invalid_argument("derivative: order must be 1 or 2");
    }
    const double h = difference_step(x, order);
    // Snap the step to a representable offset from x.
    const double hi = x + h;
    const double lo = x - h;
    if (order == 1) return (f(hi) - f(lo)) / (hi - lo);
    const double step = 0.5 * (hi - lo);
    return (f(hi) - 2.0 * f(x) + f(lo)) / (step * step);
}

}  // namespace txh::numerics
