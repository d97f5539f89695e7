// matrix.hpp - dense complex matrices over a generic scalar plus the sparse
// operator representation used to apply Hamiltonians and Lindblad channels.
//
// Dimensions stay small (<= 64 for n_max <= 3), so everything is dense
// row-major storage with straightforward kernels.

#pragma once

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qraman/complex.hpp"

namespace qraman {

template <class S>
struct Mat {
    int n = 0;
    std::vector<Cx<S>> a;

    Mat() = default;
    explicit Mat(int dim) : n(dim), a(size_t(dim) * dim) {}

    Cx<S>& operator()(int r, int c) { return a[size_t(r) * n + c]; }
    const Cx<S>& operator()(int r, int c) const { return a[size_t(r) * n + c]; }

    void set_zero() { for (auto& x : a) x = Cx<S>(); }

    static Mat identity(int dim) {
        Mat m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = Cx<S>(scalar_constant<S>(1.0));
        return m;
    }
};

using MatD = Mat<double>;

// ---- dense kernels ----

// C += alpha * A * B
template <class S, class A>
inline void mul_acc(const Mat<S>& lhs, const Mat<S>& rhs, Mat<S>& out, const A& alpha) {
    const int n = lhs.n;
    assert(rhs.n == n && out.n == n);
    for (int i = 0; i < n; ++i) {
        const Cx<S>* arow = &lhs.a[size_t(i) * n];
        Cx<S>* crow = &out.a[size_t(i) * n];
        for (int k = 0; k < n; ++k) {
            Cx<S> aik = alpha * arow[k];
            if constexpr (std::is_same_v<S, double>) {
                if (aik.re == 0.0 && aik.im == 0.0) continue;
            }
            const Cx<S>* brow = &rhs.a[size_t(k) * n];
            for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
        }
    }
}

template <class S>
inline Mat<S> operator*(const Mat<S>& a, const Mat<S>& b) {
    Mat<S> c(a.n);
    mul_acc(a, b, c, 1.0);
    return c;
}

template <class S>
inline Mat<S> operator+(const Mat<S>& a, const Mat<S>& b) {
    Mat<S> c(a.n);
    for (size_t i = 0; i < c.a.size(); ++i) c.a[i] = a.a[i] + b.a[i];
    return c;
}

template <class S>
inline Mat<S> operator-(const Mat<S>& a, const Mat<S>& b) {
    Mat<S> c(a.n);
    for (size_t i = 0; i < c.a.size(); ++i) c.a[i] = a.a[i] - b.a[i];
    return c;
}

// Y += alpha * X
template <class S, class A>
inline void axpy(const A& alpha, const Mat<S>& x, Mat<S>& y) {
    assert(x.n == y.n);
    for (size_t i = 0; i < x.a.size(); ++i) y.a[i] += alpha * x.a[i];
}

template <class S, class A>
inline void scale(Mat<S>& x, const A& alpha) {
    for (auto& v : x.a) v = alpha * v;
}

template <class S>
inline void adjoint_into(const Mat<S>& x, Mat<S>& out) {
    const int n = x.n;
    assert(out.n == n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = conj(x(j, i));
}

template <class S>
inline Mat<S> adjoint(const Mat<S>& x) {
    Mat<S> out(x.n);
    adjoint_into(x, out);
    return out;
}

template <class S>
inline Cx<S> trace(const Mat<S>& x) {
    Cx<S> t{};
    for (int i = 0; i < x.n; ++i) t += x(i, i);
    return t;
}

template <class S>
inline Cx<S> trace_prod(const Mat<S>& a, const Mat<S>& b) {
    // tr(A*B) without forming the product.
    Cx<S> t{};
    const int n = a.n;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) t += a(i, k) * b(k, i);
    return t;
}

inline double frobenius(const MatD& x) {
    double s = 0.0;
    for (const auto& v : x.a) s += norm2(v);
    return std::sqrt(s);
}

inline double max_abs(const MatD& x) {
    double m = 0.0;
    for (const auto& v : x.a) m = std::max(m, std::sqrt(norm2(v)));
    return m;
}

inline double hermiticity_error(const MatD& x) {
    double m = 0.0;
    for (int i = 0; i < x.n; ++i)
        for (int j = i; j < x.n; ++j) {
            CxD d = x(i, j) - conj(x(j, i));
            m = std::max(m, std::sqrt(norm2(d)));
        }
    return m;
}

template <class S>
inline Mat<double> value_matrix(const Mat<S>& x) {
    Mat<double> out(x.n);
    for (size_t i = 0; i < x.a.size(); ++i) out.a[i] = cx_value(x.a[i]);
    return out;
}

// ---- sparse operator ----

struct SparseEntry {
    int r = 0;
    int c = 0;
    CxD v{};
};

struct SparseOp {
    int n = 0;
    std::vector<SparseEntry> e;

    SparseOp() = default;
    explicit SparseOp(int dim) : n(dim) {}

    void add(int r, int c, CxD v) {
        if (v.re == 0.0 && v.im == 0.0) return;
        for (auto& en : e) {
            if (en.r == r && en.c == c) { en.v += v; return; }
        }
        e.push_back({r, c, v});
    }

    MatD dense() const {
        MatD m(n);
        for (const auto& en : e) m(en.r, en.c) += en.v;
        return m;
    }

    static SparseOp from_dense(const MatD& m, double tol = 0.0) {
        SparseOp s(m.n);
        for (int i = 0; i < m.n; ++i)
            for (int j = 0; j < m.n; ++j)
                if (std::sqrt(norm2(m(i, j))) > tol) s.e.push_back({i, j, m(i, j)});
        return s;
    }
};

inline SparseOp sparse_adjoint(const SparseOp& s) {
    SparseOp out(s.n);
    out.e.reserve(s.e.size());
    for (const auto& en : s.e) out.e.push_back({en.c, en.r, conj(en.v)});
    return out;
}

inline SparseOp sparse_scale(const SparseOp& s, CxD alpha) {
    SparseOp out = s;
    for (auto& en : out.e) en.v = alpha * en.v;
    return out;
}

inline SparseOp sparse_sum(const SparseOp& a, const SparseOp& b) {
    SparseOp out = a;
    for (const auto& en : b.e) out.add(en.r, en.c, en.v);
    return out;
}

inline SparseOp sparse_mul(const SparseOp& a, const SparseOp& b) {
    SparseOp out(a.n);
    for (const auto& ea : a.e)
        for (const auto& eb : b.e)
            if (ea.c == eb.r) out.add(ea.r, eb.c, ea.v * eb.v);
    return out;
}

// Y += alpha * Op * X
template <class S, class A>
inline void sp_mul_acc_left(const A& alpha, const SparseOp& op, const Mat<S>& x, Mat<S>& y) {
    const int n = x.n;
    for (const auto& en : op.e) {
        Cx<S> w = alpha * (en.v * Cx<S>(scalar_constant<S>(1.0)));
        const Cx<S>* xrow = &x.a[size_t(en.c) * n];
        Cx<S>* yrow = &y.a[size_t(en.r) * n];
        for (int j = 0; j < n; ++j) yrow[j] += w * xrow[j];
    }
}

// Y += alpha * X * Op
template <class S, class A>
inline void sp_mul_acc_right(const A& alpha, const Mat<S>& x, const SparseOp& op, Mat<S>& y) {
    const int n = x.n;
    for (const auto& en : op.e) {
        Cx<S> w = alpha * (en.v * Cx<S>(scalar_constant<S>(1.0)));
        for (int i = 0; i < n; ++i) y.a[size_t(i) * n + en.c] += w * x.a[size_t(i) * n + en.r];
    }
}

// tr(X * Op) = sum_e Op(r,c) X(c,r)
template <class S>
inline Cx<S> trace_prod_sparse(const Mat<S>& x, const SparseOp& op) {
    Cx<S> t{};
    for (const auto& en : op.e) t += en.v * x(en.c, en.r);
    return t;
}

// ---- Hermitian diagnostics ----

// Attempts a Cholesky factorization of (m + shift*I); success certifies that
// the smallest eigenvalue of Hermitian m is >= -shift.
bool cholesky_shifted_psd(const MatD& m, double shift);

// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations.
std::vector<double> hermitian_eigenvalues(const MatD& m);

double min_eigenvalue(const MatD& m);

} // namespace qraman
