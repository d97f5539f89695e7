// raman.hpp - the Raman single-photon observables: the driving correlator
// R(t), the effective dephasing rates, the stabilized evaluation of the Raman
// photon population N_R(t), and the emission probability P_R.
//
// N_R is the paper's double time integral
//   N_R(t) = (2 g <B>^2/hbar^2) Re int_0^t dt' e^{-kappa(t-t')}
//            int_0^t' dt'' (e^{W_BX(t')-W_BX(t'')} - e^{W_XG(t')-W_XG(t'')}) R(t'')
// with W_ab(t) = -i int_0^t w_ab,c.  The inner integrals are evaluated through
// the damped auxiliary variables
//   du_a/dt = -i w_ab,c(t) u_a + R(t),   dM/dt = -kappa M + (u_BX - u_XG),
// stepped with an integrating-factor trapezoidal rule that reproduces the
// trapezoidal double sum exactly (same quadrature, no growing exponentials).

#pragma once

#include <vector>

#include "qraman/generator.hpp"
#include "qraman/phonon.hpp"

namespace qraman {

// Effective channel rates (ps^-1):
//   Gamma_bar_XG = Gamma_XG + G_L(+delta_XG) + G_L(+delta_BX)
//   Gamma_bar_BX = Gamma_BX + G_L(-delta_XG) + G_L(-delta_BX)
// with the instantaneous laser detunings
//   hbar delta_XG = Delta_L - Delta_C^BX + hbar d(arg Omega)/dt
//   hbar delta_BX = Delta_L - Delta_C^XG + hbar d(arg Omega)/dt.
// Phonons disabled -> the static rates alone.
template <class S>
struct EffectiveRates {
    std::vector<S> xg; // ps^-1
    std::vector<S> bx; // ps^-1
};

// hbar * d(arg Omega_envelope)/dt from drive samples that include the frame
// carrier; the carrier rotation is added back so the result refers to the
// envelope relative to omega_L.
template <class S>
S envelope_phase_velocity_mev(const DriveSamples<S>& d, double t, const S& delta_l,
                              double frame_delta_b) {
    Cx<S> w = d.at(t);
    Cx<S> dw = d.deriv_at(t);
    S n2 = norm2(w) + scalar_constant<S>(1e-24);
    // Im(w' conj(w)) / |w|^2
    S phidot = (dw.im * w.re - dw.re * w.im) / n2;
    return scalar_constant<S>(kHbar) * phidot + scalar_constant<S>(frame_delta_b) + delta_l;
}

template <class S>
EffectiveRates<S> effective_rates(const SystemParams& sys, const DriveSamples<S>& drive,
                                  const std::vector<double>& t_grid, const S& delta_l,
                                  const PhononKernels* kernels) {
    EffectiveRates<S> r;
    const size_t n = t_grid.size();
    r.xg.assign(n, scalar_constant<S>(sys.big_gamma_xg_per_ps()));
    r.bx.assign(n, scalar_constant<S>(sys.big_gamma_bx_per_ps()));
    if (!sys.phonons || kernels == nullptr || kernels->phi.empty() || drive.empty()) return r;

    const double frame_db = sys.frame_delta_b_mev();
    for (size_t k = 0; k < n; ++k) {
        double t = t_grid[k];
        Cx<S> w = drive.at(t);
        S mag2 = norm2(w);
        if (value_of(mag2) < 1e-20) continue;
        // Envelope components rotate as e^{-i eps t/hbar} for lab frequency
        // omega_L + eps/hbar, so the instantaneous laser energy is
        // hbar omega_L - hbar d(arg)/dt.
        S hphidot = envelope_phase_velocity_mev(drive, t, delta_l, frame_db);
        S d_xg = (delta_l - scalar_constant<S>(sys.delta_c_bx_mev()) - hphidot) /
                 scalar_constant<S>(kHbar);
        S d_bx = (delta_l - scalar_constant<S>(sys.delta_c_xg_mev()) - hphidot) /
                 scalar_constant<S>(kHbar);
        r.xg[k] += laser_phonon_rate(mag2, d_xg, *kernels) +
                   laser_phonon_rate(mag2, d_bx, *kernels);
        r.bx[k] += laser_phonon_rate(mag2, S(-1.0 * d_xg), *kernels) +
                   laser_phonon_rate(mag2, S(-1.0 * d_bx), *kernels);
    }
    return r;
}

template <class S>
struct RamanTrace {
    std::vector<double> t_grid;
    std::vector<Cx<S>> r;    // Raman driving R(t) (meV)
    std::vector<S> n_r;      // Raman photon population
    S p_r{};                 // kappa * int N_R dt
    double max_im_residue = 0.0;
    bool clipped = false;    // P_R was slightly negative and clipped to 0
};

// The operator whose expectation, multiplied by conj(Omega_c), is the Raman
// driving: |G><B| (x) b_sigma-^dag.
inline SparseOp raman_operator(const SpaceConfig& cfg) {
    return sparse_mul(sparse_projector(QdLevel::G, QdLevel::B, cfg),
                      sparse_adjoint(sparse_annihilator(Mode::SigmaMinus, cfg)));
}

// R(t) = tr(rho(t) |G><B| b_sigma-^dag) * conj(Omega_c(t)); assembled in the
// rotating frame where the residual phase carries Delta_L only.
template <class S>
Cx<S> raman_driving_value(const Mat<S>& rho, const SparseOp& raman_op, const Cx<S>& omega_c) {
    return trace_prod_sparse(rho, raman_op) * conj(omega_c);
}

// Stabilized ODE evaluation (integrating-factor trapezoid, see header note).
template <class S>
void raman_population(RamanTrace<S>& tr, const SystemParams& sys, const EffectiveRates<S>& rates,
                      double b_avg) {
    const size_t n = tr.t_grid.size();
    tr.n_r.assign(n, scalar_constant<S>(0.0));
    if (n < 2) return;
    const double dt = tr.t_grid[1] - tr.t_grid[0];
    const double kappa = sys.kappa_per_ps;
    const double pref = 2.0 * sys.g_mev * b_avg * b_avg / (kHbar * kHbar);
    const double w_bx_re = -sys.delta_c_bx_mev() / kHbar; // omega_B - omega_X - omega_c
    const double w_xg_re = -sys.delta_c_xg_mev() / kHbar;

    Cx<S> u_bx{}, u_xg{}, m{};
    const double ekap = std::exp(-kappa * dt);
    double max_im = 0.0;
    for (size_t k = 0; k + 1 < n; ++k) {
        // -i w(t) averaged over the step for the integrating factor
        auto step_factor = [&](double wre, const S& g0, const S& g1) {
            // exp(-i dt/2 (w_k + w_{k+1})) with w = wre - (i/2)(kappa + Gamma)
            S re_exp = scalar_constant<S>(-0.25 * dt) *
                       (scalar_constant<S>(2.0 * kappa) + g0 + g1);
            Cx<S> ex(re_exp, scalar_constant<S>(-dt * wre));
            return cx_exp(ex);
        };
        Cx<S> e_bx = step_factor(w_bx_re, rates.bx[k], rates.bx[k + 1]);
        Cx<S> e_xg = step_factor(w_xg_re, rates.xg[k], rates.xg[k + 1]);

        Cx<S> d_k = u_bx - u_xg;
        u_bx = e_bx * u_bx + (0.5 * dt) * (e_bx * tr.r[k] + tr.r[k + 1]);
        u_xg = e_xg * u_xg + (0.5 * dt) * (e_xg * tr.r[k] + tr.r[k + 1]);
        Cx<S> d_k1 = u_bx - u_xg;
        m = ekap * m + (0.5 * dt) * (ekap * d_k + d_k1);
        tr.n_r[k + 1] = pref * m.re;
        max_im = std::max(max_im, std::abs(value_of(m.im)) * pref);
    }
    tr.max_im_residue = max_im; // diagnostic: magnitude of the discarded Im part
}

// Reference evaluator: direct trapezoidal double sum of the paper's formula,
// O(n^2); used as the regression oracle for the ODE form.
template <class S>
std::vector<S> raman_population_direct(const std::vector<double>& t_grid,
                                       const std::vector<Cx<S>>& r, const SystemParams& sys,
                                       const EffectiveRates<S>& rates, double b_avg) {
    const size_t n = t_grid.size();
    std::vector<S> out(n, scalar_constant<S>(0.0));
    if (n < 2) return out;
    const double dt = t_grid[1] - t_grid[0];
    const double kappa = sys.kappa_per_ps;
    const double pref = 2.0 * sys.g_mev * b_avg * b_avg / (kHbar * kHbar);
    const double w_bx_re = -sys.delta_c_bx_mev() / kHbar;
    const double w_xg_re = -sys.delta_c_xg_mev() / kHbar;

    // W(t_k) = -i int_0^{t_k} w dt by cumulative trapezoid
    std::vector<Cx<S>> w_bx(n), w_xg(n);
    w_bx[0] = Cx<S>();
    w_xg[0] = Cx<S>();
    for (size_t k = 0; k + 1 < n; ++k) {
        auto inc = [&](double wre, const S& g0, const S& g1) {
            S im_part = scalar_constant<S>(-0.25 * dt) *
                        (scalar_constant<S>(2.0 * kappa) + g0 + g1);
            return Cx<S>(im_part, scalar_constant<S>(-dt * wre));
        };
        w_bx[k + 1] = w_bx[k] + inc(w_bx_re, rates.bx[k], rates.bx[k + 1]);
        w_xg[k + 1] = w_xg[k] + inc(w_xg_re, rates.xg[k], rates.xg[k + 1]);
    }

    std::vector<Cx<S>> inner(n);
    for (size_t kp = 0; kp < n; ++kp) {
        Cx<S> acc{};
        for (size_t kpp = 0; kpp <= kp; ++kpp) {
            double w = (kpp == 0 || kpp == kp) ? 0.5 : 1.0;
            if (kp == 0) w = 0.0;
            Cx<S> ker = cx_exp(w_bx[kp] - w_bx[kpp]) - cx_exp(w_xg[kp] - w_xg[kpp]);
            acc += (w * dt) * (ker * r[kpp]);
        }
        inner[kp] = acc;
    }
    for (size_t k = 0; k < n; ++k) {
        Cx<S> acc{};
        for (size_t kp = 0; kp <= k; ++kp) {
            double w = (kp == 0 || kp == k) ? 0.5 : 1.0;
            if (k == 0) w = 0.0;
            acc += (w * dt * std::exp(-kappa * (t_grid[k] - t_grid[kp]))) * inner[kp];
        }
        out[k] = pref * acc.re;
    }
    return out;
}

template <class S>
struct RamanProbability {
    S p_r{};
    bool clipped = false;
    bool warning = false;
};

template <class S>
RamanProbability<S> raman_probability(const std::vector<double>& t_grid,
                                      const std::vector<S>& n_r, const SystemParams& sys) {
    RamanProbability<S> res;
    S acc = scalar_constant<S>(0.0);
    for (size_t k = 0; k + 1 < t_grid.size(); ++k)
        acc += scalar_constant<S>(0.5 * (t_grid[k + 1] - t_grid[k])) * (n_r[k] + n_r[k + 1]);
    res.p_r = scalar_constant<S>(sys.kappa_per_ps) * acc;
    double v = value_of(res.p_r);
    if (v < 0.0) {
        res.warning = true;
        if (v > -1e-4) {
            res.p_r = scalar_constant<S>(0.0);
            res.clipped = true;
        }
    }
    return res;
}

} // namespace qraman
