// complex.hpp - complex numbers over a generic real scalar.
//
// std::complex is only specified for built-in floating types, so the pipeline
// carries its own minimal complex type that works for double, Dual and
// HyperDual alike.

#pragma once

#include <cmath>
#include <type_traits>

#include "qraman/scalar.hpp"

namespace qraman {

template <class S>
struct Cx {
    S re{};
    S im{};
    Cx() = default;
    Cx(S r) : re(r) {}
    Cx(S r, S i) : re(r), im(i) {}

    // Promote a plain-double complex into a dual-valued one (constant).
    template <class T, class = std::enable_if_t<!std::is_same_v<T, S> && std::is_same_v<T, double>>>
    Cx(const Cx<T>& o) : re(scalar_constant<S>(o.re)), im(scalar_constant<S>(o.im)) {}
};

using CxD = Cx<double>;

template <class S> inline Cx<S> operator-(const Cx<S>& a) { return {-a.re, -a.im}; }

template <class S>
inline Cx<S> operator+(const Cx<S>& a, const Cx<S>& b) { return {a.re + b.re, a.im + b.im}; }
template <class S>
inline Cx<S> operator-(const Cx<S>& a, const Cx<S>& b) { return {a.re - b.re, a.im - b.im}; }
template <class S>
inline Cx<S> operator*(const Cx<S>& a, const Cx<S>& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class S>
inline Cx<S> operator/(const Cx<S>& a, const Cx<S>& b) {
    S n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

template <class S> inline Cx<S>& operator+=(Cx<S>& a, const Cx<S>& b) { a = a + b; return a; }
template <class S> inline Cx<S>& operator-=(Cx<S>& a, const Cx<S>& b) { a = a - b; return a; }
template <class S> inline Cx<S>& operator*=(Cx<S>& a, const Cx<S>& b) { a = a * b; return a; }

// Real scalar (same kind) mixes.
template <class S> inline Cx<S> operator*(const S& s, const Cx<S>& a) { return {s * a.re, s * a.im}; }
template <class S> inline Cx<S> operator*(const Cx<S>& a, const S& s) { return {a.re * s, a.im * s}; }

// double mixes for dual-valued complexes (constants: derivative-free).
template <class S, class = std::enable_if_t<!std::is_same_v<S, double>>>
inline Cx<S> operator*(double s, const Cx<S>& a) { return {s * a.re, s * a.im}; }
template <class S, class = std::enable_if_t<!std::is_same_v<S, double>>>
inline Cx<S> operator*(const Cx<S>& a, double s) { return {a.re * s, a.im * s}; }

// Cx<double> coefficient times Cx<S> value (sparse-matrix entries etc.).
template <class S, class = std::enable_if_t<!std::is_same_v<S, double>>>
inline Cx<S> operator*(const Cx<double>& c, const Cx<S>& a) {
    return {c.re * a.re - c.im * a.im, c.re * a.im + c.im * a.re};
}
template <class S, class = std::enable_if_t<!std::is_same_v<S, double>>>
inline Cx<S> operator*(const Cx<S>& a, const Cx<double>& c) { return c * a; }

template <class S> inline Cx<S> conj(const Cx<S>& a) { return {a.re, -a.im}; }
template <class S> inline S norm2(const Cx<S>& a) { return a.re * a.re + a.im * a.im; }
template <class S> inline S abs(const Cx<S>& a) { using std::sqrt; using qraman::sqrt; return sqrt(norm2(a)); }
template <class S> inline Cx<S> cx_i_times(const Cx<S>& a) { return {-a.im, a.re}; }

// exp(a) for complex a.
template <class S>
inline Cx<S> cx_exp(const Cx<S>& a) {
    using std::exp; using std::sin; using std::cos;
    using qraman::exp; using qraman::sin; using qraman::cos;
    S m = exp(a.re);
    return {m * cos(a.im), m * sin(a.im)};
}

// exp(i*phi) for real phi.
template <class S>
inline Cx<S> cx_expi(const S& phi) {
    using std::sin; using std::cos;
    using qraman::sin; using qraman::cos;
    return {cos(phi), sin(phi)};
}

template <class S>
inline Cx<double> cx_value(const Cx<S>& a) { return {value_of(a.re), value_of(a.im)}; }

} // namespace qraman
