// pulse.hpp - Gaussian input pulse, in-repo DFT, SLM spectral phase mask.
//
// The stored complex envelope is relative to the laser carrier omega_L; the
// residual rotating-frame phase is applied when the drive enters the
// Hamiltonian.  Everything is generic over the scalar so pulse-parameter
// derivatives propagate through the shaping.
//
// DFT convention: the envelope reconstructs as f(t) = sum_k F_k e^{-i w_k t},
// so a bin with positive energy detuning eps_k = hbar*w_k corresponds to a lab
// frequency omega_L + eps_k/hbar.

#pragma once

#include <stdexcept>
#include <vector>

#include "qraman/complex.hpp"
#include "qraman/params.hpp"

namespace qraman {

template <class S>
struct PulseParamsT {
    double e0 = 4.0;     // dimensionless energy measure (the optimizer constraint)
    S sigma = scalar_constant<S>(3.0); // width (ps)
    S t0 = scalar_constant<S>(20.0);   // center (ps)
    S delta_l = scalar_constant<S>(0.0); // laser detuning (meV)
};
using PulseParams = PulseParamsT<double>;

template <class S>
struct MaskParamsT {
    S alpha = scalar_constant<S>(0.0); // rad
    S gamma = scalar_constant<S>(0.0); // 1/meV
    S delta = scalar_constant<S>(0.0); // rad
    S eta = scalar_constant<S>(0.0);   // 1/meV^2 (quadratic phase, linear chirp)
};
using MaskParams = MaskParamsT<double>;

struct PulseGrid {
    double t_end = 120.0;
    int n = 8192; // power of two
    double dt() const { return t_end / n; }
    double t(int k) const { return dt() * k; }
    // Signed energy detuning from omega_L of frequency bin k (meV).
    double bin_energy_mev(int k) const {
        int s = k <= n / 2 ? k : k - n;
        return kHbar * 2.0 * M_PI * double(s) / t_end;
    }
};

template <class S>
struct SampledPulse {
    PulseGrid grid;
    std::vector<Cx<S>> values; // envelope relative to omega_L, meV
    S energy{};                // integral |Omega|^2 dt (meV^2 ps), analytic for the input

    S grid_energy() const {
        S e = scalar_constant<S>(0.0);
        for (const auto& v : values) e += norm2(v);
        return e * grid.dt();
    }
};

// In-place radix-2 transform of a power-of-two-sized vector.
// forward=true maps time samples to frequency bins F_k = (1/N) sum f_n e^{+2pi i k n/N};
// forward=false reconstructs f_n = sum F_k e^{-2pi i k n / N}.
template <class S>
void dft_radix2(std::vector<Cx<S>>& a, bool forward) {
    const size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("dft_radix2: size must be a power of two");
    // bit reversal
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const double sign = forward ? +1.0 : -1.0;
    for (size_t len = 2; len <= n; len <<= 1) {
        double ang = sign * 2.0 * M_PI / double(len);
        CxD wl(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            CxD w(1.0, 0.0);
            for (size_t k = 0; k < len / 2; ++k) {
                Cx<S> u = a[i + k];
                Cx<S> v = w * a[i + k + len / 2];
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w = w * wl;
            }
        }
    }
    if (forward) {
        const double invn = 1.0 / double(n);
        for (auto& x : a) x = invn * x;
    }
}

// Gaussian input field, envelope only: Omega = hbar sqrt(E0 pi / (4 ps sigma))
// exp(-((t-t0)/sigma)^2).  Throws if the grid cannot resolve the pulse.
template <class S>
SampledPulse<S> gaussian_input(const PulseParamsT<S>& p, const PulseGrid& grid = {}) {
    if (grid.n < 4096) throw std::invalid_argument("gaussian_input: grid must have >= 4096 points");
    if (!(value_of(p.sigma) > 0.0)) throw std::invalid_argument("gaussian_input: sigma must be > 0");
    if (value_of(p.sigma) < 8.0 * grid.dt())
        throw std::invalid_argument("gaussian_input: grid too coarse for pulse width");

    SampledPulse<S> out;
    out.grid = grid;
    out.values.resize(grid.n);
    S amp = kHbar * sqrt(scalar_constant<S>(p.e0 * M_PI / 4.0) / p.sigma);
    for (int k = 0; k < grid.n; ++k) {
        S u = (scalar_constant<S>(grid.t(k)) - p.t0) / p.sigma;
        out.values[k] = Cx<S>(amp * exp(-(u * u)));
    }
    // closed-form energy: hbar^2 (E0 pi / 4 sigma) * sigma sqrt(pi/2)
    out.energy = scalar_constant<S>(kHbar * kHbar * p.e0 * (M_PI / 4.0) * std::sqrt(M_PI / 2.0));
    return out;
}

struct MaskReport {
    double leak_fraction = 0.0; // energy fraction in the outer 5% of the frequency window
    bool leakage_warning = false;
};

// Applies the unit-modulus SLM mask e^{i phi_M(w)} with
// phi_M = alpha cos(2 pi gamma (w-w_L) + delta) + eta (w-w_L)^2 in the
// frequency domain; energy is conserved exactly up to roundoff.
template <class S>
SampledPulse<S> apply_mask(const SampledPulse<S>& in, const MaskParamsT<S>& m,
                           MaskReport* report = nullptr) {
    // Nyquist check on the periodic mask term: require >= 4 bins per cos period.
    double bin = kHbar * 2.0 * M_PI / in.grid.t_end;
    double gamma_abs = std::abs(value_of(m.gamma));
    if (gamma_abs > 0.0 && 1.0 / gamma_abs < 4.0 * bin)
        throw std::invalid_argument("apply_mask: mask oscillation too fast for the frequency grid");

    SampledPulse<S> out = in;
    dft_radix2(out.values, true);

    if (report) {
        double total = 0.0, outer = 0.0;
        for (int k = 0; k < in.grid.n; ++k) {
            double e = value_of(norm2(out.values[k]));
            total += e;
            int s = std::abs(k <= in.grid.n / 2 ? k : k - in.grid.n);
            if (s > int(0.95 * in.grid.n / 2)) outer += e;
        }
        report->leak_fraction = total > 0.0 ? outer / total : 0.0;
        report->leakage_warning = report->leak_fraction > 1e-6;
    }

    for (int k = 0; k < in.grid.n; ++k) {
        S eps = scalar_constant<S>(in.grid.bin_energy_mev(k));
        S phase = m.alpha * cos(scalar_constant<S>(2.0 * M_PI) * m.gamma * eps + m.delta) +
                  m.eta * eps * eps;
        out.values[k] = cx_expi(phase) * out.values[k];
    }
    dft_radix2(out.values, false);
    out.energy = in.energy;
    return out;
}

// Linear interpolation of the envelope at arbitrary time (used to move from
// the shaping grid to the propagation support grid).
template <class S>
Cx<S> sample_envelope(const SampledPulse<S>& p, double t) {
    if (t <= 0.0) return p.values.front();
    double x = t / p.grid.dt();
    int k = int(x);
    if (k >= p.grid.n - 1) return p.values.back();
    double w = x - k;
    return (1.0 - w) * p.values[k] + w * p.values[k + 1];
}

} // namespace qraman
