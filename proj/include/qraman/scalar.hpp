// scalar.hpp - forward-mode differentiation scalars (first and second order).
//
// The whole simulation pipeline is templated on the scalar kind so that
// directional derivatives of the Raman objective flow through pulse shaping,
// time propagation and the Raman ODEs in a single pass.  The value channel of
// every operation is written as the exact same floating-point expression the
// plain double path would execute, so value(dual run) == double run bit for bit.

#pragma once

#include <cmath>

namespace qraman {

// One directional derivative slot.
struct Dual {
    double v = 0.0;
    double d = 0.0;
    Dual() = default;
    Dual(double value) : v(value) {}
    Dual(double value, double deriv) : v(value), d(deriv) {}
};

// Second-order scalar carrying two first-order slots and the mixed second.
// Seeding (d1=1 on x_i, d2=1 on x_j) yields d12 = d2f/dx_i dx_j.
struct HyperDual {
    double v = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double d12 = 0.0;
    HyperDual() = default;
    HyperDual(double value) : v(value) {}
    HyperDual(double value, double g1, double g2, double g12)
        : v(value), d1(g1), d2(g2), d12(g12) {}
};

// ---- Dual arithmetic ----

inline Dual operator-(Dual a) { return {-a.v, -a.d}; }
inline Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }
inline Dual operator/(Dual a, Dual b) {
    double q = a.v / b.v;
    return {q, (a.d - q * b.d) / b.v};
}
inline Dual& operator+=(Dual& a, Dual b) { a = a + b; return a; }
inline Dual& operator-=(Dual& a, Dual b) { a = a - b; return a; }
inline Dual& operator*=(Dual& a, Dual b) { a = a * b; return a; }
inline Dual& operator/=(Dual& a, Dual b) { a = a / b; return a; }

inline bool operator<(Dual a, Dual b) { return a.v < b.v; }
inline bool operator>(Dual a, Dual b) { return a.v > b.v; }
inline bool operator<=(Dual a, Dual b) { return a.v <= b.v; }
inline bool operator>=(Dual a, Dual b) { return a.v >= b.v; }

inline Dual exp(Dual a) { double e = std::exp(a.v); return {e, a.d * e}; }
inline Dual log(Dual a) { return {std::log(a.v), a.d / a.v}; }
inline Dual sin(Dual a) { return {std::sin(a.v), a.d * std::cos(a.v)}; }
inline Dual cos(Dual a) { return {std::cos(a.v), -a.d * std::sin(a.v)}; }
inline Dual sqrt(Dual a) { double s = std::sqrt(a.v); return {s, a.d / (2.0 * s)}; }
inline Dual tanh(Dual a) { double t = std::tanh(a.v); return {t, a.d * (1.0 - t * t)}; }
inline Dual abs(Dual a) { return a.v < 0.0 ? -a : a; }
inline Dual atan2(Dual y, Dual x) {
    double r2 = x.v * x.v + y.v * y.v;
    return {std::atan2(y.v, x.v), (x.v * y.d - y.v * x.d) / r2};
}

// ---- HyperDual arithmetic ----

inline HyperDual operator-(HyperDual a) { return {-a.v, -a.d1, -a.d2, -a.d12}; }
inline HyperDual operator+(HyperDual a, HyperDual b) {
    return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d12 + b.d12};
}
inline HyperDual operator-(HyperDual a, HyperDual b) {
    return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2, a.d12 - b.d12};
}
inline HyperDual operator*(HyperDual a, HyperDual b) {
    return {a.v * b.v,
            a.v * b.d1 + a.d1 * b.v,
            a.v * b.d2 + a.d2 * b.v,
            a.v * b.d12 + a.d1 * b.d2 + a.d2 * b.d1 + a.d12 * b.v};
}
inline HyperDual operator/(HyperDual a, HyperDual b) {
    HyperDual q;
    q.v = a.v / b.v;
    q.d1 = (a.d1 - q.v * b.d1) / b.v;
    q.d2 = (a.d2 - q.v * b.d2) / b.v;
    q.d12 = (a.d12 - q.d1 * b.d2 - q.d2 * b.d1 - q.v * b.d12) / b.v;
    return q;
}
inline HyperDual& operator+=(HyperDual& a, HyperDual b) { a = a + b; return a; }
inline HyperDual& operator-=(HyperDual& a, HyperDual b) { a = a - b; return a; }
inline HyperDual& operator*=(HyperDual& a, HyperDual b) { a = a * b; return a; }
inline HyperDual& operator/=(HyperDual& a, HyperDual b) { a = a / b; return a; }

inline bool operator<(HyperDual a, HyperDual b) { return a.v < b.v; }
inline bool operator>(HyperDual a, HyperDual b) { return a.v > b.v; }
inline bool operator<=(HyperDual a, HyperDual b) { return a.v <= b.v; }
inline bool operator>=(HyperDual a, HyperDual b) { return a.v >= b.v; }

// Unary chain rule: f(x) with derivatives f1, f2 at x.v.
inline HyperDual lift_unary(HyperDual x, double f, double f1, double f2) {
    return {f, f1 * x.d1, f1 * x.d2, f1 * x.d12 + f2 * x.d1 * x.d2};
}

inline HyperDual exp(HyperDual a) { double e = std::exp(a.v); return lift_unary(a, e, e, e); }
inline HyperDual log(HyperDual a) {
    double inv = 1.0 / a.v;
    return lift_unary(a, std::log(a.v), inv, -inv * inv);
}
inline HyperDual sin(HyperDual a) {
    double s = std::sin(a.v), c = std::cos(a.v);
    return lift_unary(a, s, c, -s);
}
inline HyperDual cos(HyperDual a) {
    double s = std::sin(a.v), c = std::cos(a.v);
    return lift_unary(a, c, -s, -c);
}
inline HyperDual sqrt(HyperDual a) {
    double s = std::sqrt(a.v);
    double f1 = 1.0 / (2.0 * s);
    return lift_unary(a, s, f1, -f1 / (2.0 * a.v));
}
inline HyperDual tanh(HyperDual a) {
    double t = std::tanh(a.v);
    double f1 = 1.0 - t * t;
    return lift_unary(a, t, f1, -2.0 * t * f1);
}
inline HyperDual abs(HyperDual a) { return a.v < 0.0 ? -a : a; }

// ---- traits ----

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static double value(double x) { return x; }
    static double constant(double c) { return c; }
};
template <>
struct scalar_traits<Dual> {
    static double value(const Dual& x) { return x.v; }
    static Dual constant(double c) { return Dual(c); }
};
template <>
struct scalar_traits<HyperDual> {
    static double value(const HyperDual& x) { return x.v; }
    static HyperDual constant(double c) { return HyperDual(c); }
};

template <class S>
inline double value_of(const S& x) { return scalar_traits<S>::value(x); }

template <class S>
inline S scalar_constant(double c) { return scalar_traits<S>::constant(c); }

template <class S>
inline S smax(const S& a, const S& b) { return value_of(a) >= value_of(b) ? a : b; }
template <class S>
inline S smin(const S& a, const S& b) { return value_of(a) <= value_of(b) ? a : b; }

// Mixed double (op) Dual / HyperDual conveniences.
inline Dual operator+(double a, Dual b) { return Dual(a) + b; }
inline Dual operator+(Dual a, double b) { return a + Dual(b); }
inline Dual operator-(double a, Dual b) { return Dual(a) - b; }
inline Dual operator-(Dual a, double b) { return a - Dual(b); }
inline Dual operator*(double a, Dual b) { return Dual(a) * b; }
inline Dual operator*(Dual a, double b) { return a * Dual(b); }
inline Dual operator/(double a, Dual b) { return Dual(a) / b; }
inline Dual operator/(Dual a, double b) { return a / Dual(b); }

inline HyperDual operator+(double a, HyperDual b) { return HyperDual(a) + b; }
inline HyperDual operator+(HyperDual a, double b) { return a + HyperDual(b); }
inline HyperDual operator-(double a, HyperDual b) { return HyperDual(a) - b; }
inline HyperDual operator-(HyperDual a, double b) { return a - HyperDual(b); }
inline HyperDual operator*(double a, HyperDual b) { return HyperDual(a) * b; }
inline HyperDual operator*(HyperDual a, double b) { return a * HyperDual(b); }
inline HyperDual operator/(double a, HyperDual b) { return HyperDual(a) / b; }
inline HyperDual operator/(HyperDual a, double b) { return a / HyperDual(b); }

} // namespace qraman
