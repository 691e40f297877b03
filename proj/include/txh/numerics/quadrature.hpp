#pragma once

#include <functional>
#include <limits>
#include <stdexcept>

namespace txh::numerics {

enum class DomainTransform {
    none,
    /// [a, inf) mapped onto [0, 1) through q = a + t / (1 - t).
    semi_infinite_rational,
};

struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
    DomainTransform transform = DomainTransform::none;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  // conservative absolute error estimate
    int intervals = 0;
};

/// Thrown when the subdivision budget runs out; carries the best estimate.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, QuadratureResult best)
        : std::runtime_error(what), best_(best) {}
    const QuadratureResult& best() const { return best_; }

private:
    QuadratureResult best_;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [lower, upper].
/// An infinite upper bound requires (and implies) the semi-infinite transform.
/// On success |error| <= max(abs_tol, rel_tol * |value|).
QuadratureResult integrate(const std::function<double(double)>& f, double lower, double upper,
                           const QuadratureSpec& spec = {});

}  // namespace txh::numerics
