// phonon.hpp - LA-phonon kernels: spectral density, correlation function,
// displacement average, polaron Green functions, and the analytic
// laser-driven phonon rates entering the Raman objective.

#pragma once

#include <vector>

#include "qraman/complex.hpp"
#include "qraman/params.hpp"

namespace qraman {

// J(w) = alpha w^3 exp(-w^2 / 2 w_b^2), w in ps^-1, result in ps^-1.
double spectral_density(double omega, const SystemParams& p);

// Phonon correlation function phi(tau) by quadrature over (0, 8 w_b];
// relative quadrature error below 1e-8 or a runtime_error reporting the
// achieved error.
CxD correlation_phi(double tau, const SystemParams& p);

// <B> = exp(-1/2 int J/w^2 coth(hbar w / 2 kB T) dw); exactly 1 when phonons
// are disabled.
double displacement_average(const SystemParams& p);

struct PhononKernels {
    double tau_max = 5.0;
    double d_tau = 0.02;
    double B_avg = 1.0;
    std::vector<CxD> phi;        // phi(tau_k)
    std::vector<CxD> Gg;         // B^2 (cosh phi - 1)
    std::vector<CxD> Gu;         // B^2 sinh phi
    std::vector<CxD> exp_phi_m1; // e^phi - 1 (laser-rate integrand)

    int n_tau() const { return int(phi.size()); }
    double tau(int k) const { return d_tau * k; }
};

PhononKernels make_phonon_kernels(const SystemParams& p, double tau_max = 5.0,
                                  double d_tau = 0.02);

// One-sided laser-phonon rate density: 2 Re int_0^taumax e^{+i delta tau}
// (e^{phi} - 1) dtau, which at T = 0 has support only at delta > 0
// (phonon emission side).  Multiply by (B |Omega| / hbar)^2 for the physical
// rate; clipped below at zero by the caller.
template <class S>
S phonon_rate_onesided(const S& delta, const PhononKernels& k) {
    // trapezoid over the stored tau grid
    S acc = scalar_constant<S>(0.0);
    const int n = k.n_tau();
    for (int j = 0; j < n; ++j) {
        S phase = delta * scalar_constant<S>(k.tau(j));
        Cx<S> e = cx_expi(phase);
        S term = e.re * k.exp_phi_m1[j].re - e.im * k.exp_phi_m1[j].im; // Re(e * f)
        double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
        acc += scalar_constant<S>(w) * term;
    }
    return scalar_constant<S>(2.0 * k.d_tau) * acc;
}

// Full laser rate (ps^-1) for drive magnitude-squared |Omega|^2 (meV^2) and
// detuning delta (ps^-1): (B/hbar)^2 |Omega|^2 * onesided(delta), >= 0.
template <class S>
S laser_phonon_rate(const S& omega_sq_mev2, const S& delta_per_ps, const PhononKernels& k) {
    S r = scalar_constant<S>(k.B_avg * k.B_avg / (kHbar * kHbar)) * omega_sq_mev2 *
          phonon_rate_onesided(delta_per_ps, k);
    return smax(r, scalar_constant<S>(0.0));
}

} // namespace qraman
