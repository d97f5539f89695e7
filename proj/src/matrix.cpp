#include "qraman/matrix.hpp"

#include <algorithm>

namespace qraman {

bool cholesky_shifted_psd(const MatD& m, double shift) {
    const int n = m.n;
    MatD L(n);
    for (int j = 0; j < n; ++j) {
        double djj = m(j, j).re + shift;
        for (int k = 0; k < j; ++k) djj -= norm2(L(j, k));
        if (djj <= 0.0) return false;
        double ljj = std::sqrt(djj);
        L(j, j) = CxD(ljj);
        for (int i = j + 1; i < n; ++i) {
            CxD s = m(i, j);
            for (int k = 0; k < j; ++k) s -= L(i, k) * conj(L(j, k));
            L(i, j) = CxD(s.re / ljj, s.im / ljj);
        }
    }
    return true;
}

std::vector<double> hermitian_eigenvalues(const MatD& m) {
    const int n = m.n;
    MatD a = m;
    // Symmetrize against roundoff drift.
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            CxD h = CxD(0.5) * (a(i, j) + conj(a(j, i)));
            a(i, j) = h;
            a(j, i) = conj(h);
        }

    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += norm2(a(p, q));
        if (off < 1e-26) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = std::sqrt(norm2(a(p, q)));
                if (apq < 1e-300) continue;
                // Phase that makes a(p,q) real, then a real Jacobi rotation.
                CxD phase = CxD(a(p, q).re / apq, a(p, q).im / apq);
                double app = a(p, p).re;
                double aqq = a(q, q).re;
                double theta = 0.5 * std::atan2(2.0 * apq, aqq - app);
                double c = std::cos(theta), s = std::sin(theta);
                // Column rotation with u_p = c*e_p - s*phase*e_q, u_q = s*conj(phase)*e_p + c*e_q
                for (int k = 0; k < n; ++k) {
                    CxD akp = a(k, p), akq = a(k, q);
                    a(k, p) = CxD(c) * akp - CxD(s) * (phase * akq);
                    a(k, q) = CxD(s) * (conj(phase) * akp) + CxD(c) * akq;
                }
                for (int k = 0; k < n; ++k) {
                    CxD apk = a(p, k), aqk = a(q, k);
                    a(p, k) = CxD(c) * apk - CxD(s) * (conj(phase) * aqk);
                    a(q, k) = CxD(s) * (phase * apk) + CxD(c) * aqk;
                }
            }
        }
    }

    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = a(i, i).re;
    std::sort(ev.begin(), ev.end());
    return ev;
}

double min_eigenvalue(const MatD& m) {
    return hermitian_eigenvalues(m).front();
}

} // namespace qraman
