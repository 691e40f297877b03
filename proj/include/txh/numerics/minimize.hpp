#pragma once

#include <functional>
#include <stdexcept>

namespace txh::numerics {

struct Bracket {
    double lower;
    double upper;
};

class BracketError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Golden-section search for the minimum of a strictly convex g on the bracket.
/// Accuracy is limited to roughly sqrt(machine eps) relative by the flatness
/// of g near its minimum; use minimize_convex when g' is available.
/// Throws BracketError if the minimum sits on a bracket end.
double minimize_scalar(const std::function<double(double)>& g, Bracket bracket, double tol = 1e-8,
                       int max_iterations = 200);

/// Minimum of a strictly convex function located by bisection on the sign of
/// its derivative dg. Requires dg(lower) < 0 < dg(upper).
double minimize_convex(const std::function<double(double)>& dg, Bracket bracket,
                       double tol = 1e-12, int max_iterations = 200);

}  // namespace txh::numerics
