#pragma once

#include <functional>

namespace txh::numerics {

/// Central-difference derivative of order 1 or 2.
/// First order uses h = max(1e-6, 1e-6 |x|); second order uses
/// h = max(1e-4, 1e-4 |x|) to balance truncation against cancellation.
double derivative(const std::function<double(double)>& f, double x, int order);

/// Step used by derivative() for the given order at x.
double difference_step(double x, int order);

}  // namespace txh::numerics
