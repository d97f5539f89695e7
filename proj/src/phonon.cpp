#include "qraman/phonon.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qraman {

double spectral_density(double omega, const SystemParams& p) {
    const double wb = p.hbar_omega_b_mev / kHbar;
    return p.alpha_ph_ps2 * omega * omega * omega * std::exp(-omega * omega / (2.0 * wb * wb));
}

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGlX[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                            0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                            0.9445750230732326, 0.9894009349916499};
constexpr double kGlW[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                            0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                            0.0666713443086881, 0.0271524594117541};

template <class F>
double gl_integrate(F&& f, double a, double b, int panels) {
    double total = 0.0;
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double lo = a + p * h;
        double mid = lo + 0.5 * h;
        double half = 0.5 * h;
        double acc = 0.0;
        for (int i = 0; i < 8; ++i)
            acc += kGlW[i] * (f(mid - half * kGlX[i]) + f(mid + half * kGlX[i]));
        total += half * acc;
    }
    return total;
}

double coth_factor(double omega, const SystemParams& p) {
    if (p.temperature_k <= 0.0) return 1.0;
    double x = kHbar * omega / (2.0 * kBoltzmann * p.temperature_k);
    return 1.0 / std::tanh(x);
}

template <class F>
double converged_integral(F&& f, double a, double b, const char* what) {
    int panels = 96;
    double prev = gl_integrate(f, a, b, panels);
    for (int it = 0; it < 4; ++it) {
        panels *= 2;
        double cur = gl_integrate(f, a, b, panels);
        double scale = std::max(std::abs(cur), 1e-300);
        double rel = std::abs(cur - prev) / scale;
        if (rel < 1e-8) return cur;
        prev = cur;
    }
    double cur = gl_integrate(f, a, b, 2 * panels);
    double rel = std::abs(cur - prev) / std::max(std::abs(cur), 1e-300);
    if (rel < 1e-8) return cur;
    throw std::runtime_error(std::string("phonon quadrature did not converge for ") + what +
                             ", achieved relative error " + std::to_string(rel));
}

} // namespace

CxD correlation_phi(double tau, const SystemParams& p) {
    const double wb = p.hbar_omega_b_mev / kHbar;
    const double wcut = 8.0 * wb;
    double re = converged_integral(
        [&](double w) {
            return spectral_density(w, p) / (w * w) * coth_factor(w, p) * std::cos(w * tau);
        },
        1e-12, wcut, "Re phi");
    double im = -converged_integral(
        [&](double w) { return spectral_density(w, p) / (w * w) * std::sin(w * tau); }, 1e-12,
        wcut, "Im phi");
    return {re, im};
}

double displacement_average(const SystemParams& p) {
    if (!p.phonons) return 1.0;
    const double wb = p.hbar_omega_b_mev / kHbar;
    double integral = converged_integral(
        [&](double w) { return spectral_density(w, p) / (w * w) * coth_factor(w, p); }, 1e-12,
        8.0 * wb, "<B>");
    return std::exp(-0.5 * integral);
}

PhononKernels make_phonon_kernels(const SystemParams& p, double tau_max, double d_tau) {
    PhononKernels k;
    k.tau_max = tau_max;
    k.d_tau = d_tau;
    k.B_avg = displacement_average(p);
    if (!p.phonons) return k;

    const int n = int(std::round(tau_max / d_tau)) + 1;
    k.phi.resize(n);
    k.Gg.resize(n);
    k.Gu.resize(n);
    k.exp_phi_m1.resize(n);
    const double b2 = k.B_avg * k.B_avg;
    for (int j = 0; j < n; ++j) {
        CxD phi = correlation_phi(k.tau(j), p);
        k.phi[j] = phi;
        // complex cosh/sinh
        double ca = std::cosh(phi.re), sa = std::sinh(phi.re);
        double cb = std::cos(phi.im), sb = std::sin(phi.im);
        CxD ch(ca * cb, sa * sb);
        CxD sh(sa * cb, ca * sb);
        k.Gg[j] = CxD(b2) * (ch - CxD(1.0));
        k.Gu[j] = CxD(b2) * sh;
        k.exp_phi_m1[j] = ch + sh - CxD(1.0);
    }
    return k;
}

} // namespace qraman
