#pragma once

#include <cmath>

namespace mvcalc {

/// Value and first derivative carried together. Multiplication encodes the
/// product rule, so evaluating at Dual{x, 1} yields f(x) and f'(x).
struct Dual {
    double value = 0.0;
    double deriv = 0.0;

    constexpr Dual() = default;
    constexpr Dual(double v) : value(v) {}  // NOLINT: constants lift implicitly
    constexpr Dual(double v, double d) : value(v), deriv(d) {}

    constexpr bool operator==(const Dual&) const = default;

    constexpr Dual operator-() const { return {-value, -deriv}; }

    constexpr Dual& operator+=(const Dual& o) {
        value += o.value;
        deriv += o.deriv;
        return *this;
    }
    constexpr Dual& operator-=(const Dual& o) {
        value -= o.value;
        deriv -= o.deriv;
        return *this;
    }
    constexpr Dual& operator*=(const Dual& o) { return *this = *this * o; }

    friend constexpr Dual operator+(Dual a, const Dual& b) { return a += b; }
    friend constexpr Dual operator-(Dual a, const Dual& b) { return a -= b; }
    friend constexpr Dual operator*(const Dual& a, const Dual& b) {
        return {a.value * b.value, a.deriv * b.value + a.value * b.deriv};
    }
    friend constexpr Dual operator/(const Dual& a, const Dual& b) {
        return {a.value / b.value, (a.deriv * b.value - a.value * b.deriv) / (b.value * b.value)};
    }
};

/// Seeds the independent variable.
constexpr Dual variable(double x) { return {x, 1.0}; }

inline bool is_exact_zero(const Dual& d) { return d.value == 0.0 && d.deriv == 0.0; }

inline double primal(double x) { return x; }
inline double primal(const Dual& d) { return d.value; }

inline Dual sin(const Dual& a) { return {std::sin(a.value), std::cos(a.value) * a.deriv}; }
inline Dual cos(const Dual& a) { return {std::cos(a.value), -std::sin(a.value) * a.deriv}; }
inline Dual exp(const Dual& a) {
    double e = std::exp(a.value);
    return {e, e * a.deriv};
}
inline Dual log(const Dual& a) { return {std::log(a.value), a.deriv / a.value}; }

/// Integer power; p == 0 gives the constant 1.
inline Dual pow(const Dual& a, int p) {
    if (p == 0) return {1.0, 0.0};
    return {std::pow(a.value, p), p * std::pow(a.value, p - 1) * a.deriv};
}

} // namespace mvcalc
