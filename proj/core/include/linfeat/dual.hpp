#pragma once

#include <cmath>

namespace linfeat {

/// Forward-mode scalar. Carries a value and the derivative of that value with
/// respect to one seeded input direction; arithmetic follows the epsilon^2 = 0
/// rules, so evaluating an expression once yields value and exact derivative.
///
/// The converting constructor from double promotes constants with zero
/// derivative, which lets generic feature expressions mix literals freely.
struct DualScalar {
    double value = 0.0;
    double deriv = 0.0;

    constexpr DualScalar() = default;
    constexpr DualScalar(double v) : value(v) {}  // NOLINT: implicit by design
    constexpr DualScalar(double v, double d) : value(v), deriv(d) {}
};

constexpr DualScalar operator+(DualScalar a, DualScalar b) {
    return {a.value + b.value, a.deriv + b.deriv};
}

constexpr DualScalar operator-(DualScalar a, DualScalar b) {
    return {a.value - b.value, a.deriv - b.deriv};
}

constexpr DualScalar operator-(DualScalar a) { return {-a.value, -a.deriv}; }

constexpr DualScalar operator*(DualScalar a, DualScalar b) {
    return {a.value * b.value, a.deriv * b.value + a.value * b.deriv};
}

constexpr DualScalar operator/(DualScalar a, DualScalar b) {
    return {a.value / b.value,
            (a.deriv * b.value - a.value * b.deriv) / (b.value * b.value)};
}

inline DualScalar& operator+=(DualScalar& a, DualScalar b) { return a = a + b; }
inline DualScalar& operator-=(DualScalar& a, DualScalar b) { return a = a - b; }
inline DualScalar& operator*=(DualScalar& a, DualScalar b) { return a = a * b; }
inline DualScalar& operator/=(DualScalar& a, DualScalar b) { return a = a / b; }

inline DualScalar sin(DualScalar a) {
    return {std::sin(a.value), a.deriv * std::cos(a.value)};
}

inline DualScalar cos(DualScalar a) {
    return {std::cos(a.value), -a.deriv * std::sin(a.value)};
}

inline DualScalar exp(DualScalar a) {
    const double e = std::exp(a.value);
    return {e, a.deriv * e};
}

/// Integer power; d/dx x^n = n x^(n-1). Negative exponents go through the
/// quotient rule on 1 / x^|n|.
inline DualScalar pow(DualScalar a, int n) {
    if (n == 0) return {1.0, 0.0};
    if (n < 0) return DualScalar{1.0, 0.0} / pow(a, -n);
    return {std::pow(a.value, n),
            a.deriv * static_cast<double>(n) * std::pow(a.value, n - 1)};
}

/// Sum of term(x_j) over a curve; the canonical reduction for compressing
/// features. Works for double and DualScalar alike.
template <class Span, class Term>
auto sum_terms(const Span& xs, Term term) {
    using Scalar = std::decay_t<decltype(term(xs[0]))>;
    Scalar acc{};
    for (const auto& x : xs) acc += term(x);
    return acc;
}

inline double& value_of(double& x) { return x; }
inline const double& value_of(const double& x) { return x; }
inline double& value_of(DualScalar& x) { return x.value; }
inline const double& value_of(const DualScalar& x) { return x.value; }

}  // namespace linfeat
