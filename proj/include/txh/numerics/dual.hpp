#pragma once

#include <cmath>
#include <type_traits>

namespace txh::numerics {

/// Forward-mode dual number a + b·eps with eps^2 = 0.
/// Nest as Dual<Dual<double>> to carry exact second derivatives.
template <class T>
struct Dual {
    T v{};  // value
    T d{};  // derivative

    constexpr Dual() = default;
    constexpr Dual(T value) : v(value) {}  // NOLINT(google-explicit-constructor)
    constexpr Dual(T value, T deriv) : v(value), d(deriv) {}

    template <class S>
        requires std::is_arithmetic_v<S> && (!std::is_same_v<S, T>)
    constexpr Dual(S value) : v(T(value)) {}  // NOLINT(google-explicit-constructor)

    constexpr Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
    constexpr Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
    constexpr Dual& operator*=(const Dual& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
    constexpr Dual& operator/=(const Dual& o) {
        d = (d * o.v - v * o.d) / (o.v * o.v);
        v /= o.v;
        return *this;
    }
};

template <class T> constexpr Dual<T> operator+(Dual<T> a, const Dual<T>& b) { return a += b; }
template <class T> constexpr Dual<T> operator-(Dual<T> a, const Dual<T>& b) { return a -= b; }
template <class T> constexpr Dual<T> operator*(Dual<T> a, const Dual<T>& b) { return a *= b; }
template <class T> constexpr Dual<T> operator/(Dual<T> a, const Dual<T>& b) { return a /= b; }
template <class T> constexpr Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.d}; }

template <class T, class S> requires std::is_arithmetic_v<S>
constexpr Dual<T> operator+(Dual<T> a, S b) { return a += Dual<T>(b); }
template <class T, class S> requires std::is_arithmetic_v<S>
constexpr Dual<T> operator+(S a, Dual<T> b) { return b += Dual<T>(a); }
template <class T, class S> requires std::is_arithmetic_v<S>
constexpr Dual<T> operator-(Dual<T> a, S b) { return a -= Dual<T>(b); }
template <class T, class S> requires std::is_arithmetic_v<S>
constexpr Dual<T> operator-(S a, const Dual<T>& b) { return Dual<T>(a) - b; }
template <class T, class S> requires std::is_arithmetic_v<S>
constexpr Dual<T> operator*(Dual<T> a, S b) { return a *= Dual<T>(b); }
template <class T, class S> requires std::is_arithmetic_v<S>
constexpr Dual<T> operator*(S a, Dual<T> b) { return b *= Dual<T>(a); }
template <class T, class S> requires std::is_arithmetic_v<S>
constexpr Dual<T> operator/(Dual<T> a, S b) { return a /= Dual<T>(b); }
template <class T, class S> requires std::is_arithmetic_v<S>
constexpr Dual<T> operator/(S a, const Dual<T>& b) { return Dual<T>(a) / b; }

template <class T>
Dual<T> sqrt(const Dual<T>& a) {
    using std::sqrt;
    T s = sqrt(a.v);
    return {s, a.d / (s * 2.0)};
}

template <class T>
Dual<T> exp(const Dual<T>& a) {
    using std::exp;
    T e = exp(a.v);
    return {e, a.d * e};
}

template <class T>
Dual<T> log(const Dual<T>& a) {
    using std::log;
    return {log(a.v), a.d / a.v};
}

/// Integer power by repeated multiplication (negative exponents allowed).
template <class T>
constexpr T ipow(T base, int n) {
    if (n < 0) return T(1.0) / ipow(base, -n);
    T result(1.0);
    while (n-- > 0) result = result * base;
    return result;
}

/// Value and first two derivatives of a scalar function.
struct Jet2 {
    double value;
    double first;
    double second;
};

/// Evaluates f on a second-order dual seed at x.
template <class F>
Jet2 jet2(F&& f, double x) {
    using D2 = Dual<Dual<double>>;
    D2 seed{Dual<double>{x, 1.0}, Dual<double>{1.0, 0.0}};
    D2 y = f(seed);
    return {y.v.v, y.v.d, y.d.d};
}

}  // namespace txh::numerics
