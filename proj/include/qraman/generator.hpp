// generator.hpp - the full time-dependent generator of the polaron master
// equation in the rotating frame: coherent part, Markovian dissipators
// (cavity loss, pure dephasing, radiative decay) and the time-nonlocal
// phonon dissipator with backward Heisenberg operator propagation.
//
// Frame: both cavity modes rotate at omega_c and the drive envelope at
// omega_L, so the Hamiltonian carries only detunings and slowly varying
// envelopes.  Frame diagonal: Delta_X = -Delta_C^XG on the excitons,
// Delta_B = -(Delta_C^BX + Delta_C^XG) on the biexciton, zero on photons.
// The drive sample entering the Hamiltonian is
//   Omega_c(t) = Omega_envelope(t) * exp(-i (Delta_B + Delta_L) t / hbar),
// paired with the raising pattern A^dag = |X_sig+><G| + |B><X_sig-|.

#pragma once

#include <functional>
#include <vector>

#include "qraman/matrix.hpp"
#include "qraman/operators.hpp"
#include "qraman/params.hpp"
#include "qraman/phonon.hpp"
#include "qraman/pulse.hpp"

namespace qraman {

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Drive samples on the propagation support grid (4x finer than the master
// step), carrier included, plus the time derivative used by the phonon
// backward integration.
template <class S>
struct DriveSamples {
    double dt = 0.005;
    std::vector<Cx<S>> omega;  // Omega_c(t_k) (meV)
    std::vector<Cx<S>> domega; // d Omega_c / dt (meV/ps)

    bool empty() const { return omega.empty(); }

    Cx<S> at(double t) const { return interp(omega, t); }
    Cx<S> deriv_at(double t) const { return interp(domega, t); }

  private:
    Cx<S> interp(const std::vector<Cx<S>>& v, double t) const {
        if (v.empty()) return Cx<S>();
        if (t <= 0.0) return v.front();
        double x = t / dt;
        size_t k = size_t(x);
        if (k >= v.size() - 1) return v.back();
        double w = x - double(k);
        return (1.0 - w) * v[k] + w * v[k + 1];
    }
};

// A Lindblad channel out += rate*(2 s M s^dag - s^dag s M - M s^dag s).
struct LindbladChannel {
    double rate = 0.0;
    SparseOp sigma;
    SparseOp sigma_dag;
    std::vector<double> sds_diag; // diagonal of sigma^dag sigma (real)
};

enum class PhononApplyMode { None, Tables };

template <class S>
struct GenWork {
    Mat<S> t1, t2, t3;
    void ensure(int n) {
        if (t1.n != n) { t1 = Mat<S>(n); t2 = Mat<S>(n); t3 = Mat<S>(n); }
    }
};

template <class S>
struct PhononSweep; // below

template <class S>
struct Generator {
    SpaceConfig cfg;
    SystemParams params;
    double b_avg = 1.0;

    // Coherent part
    SparseOp h_static;                      // detunings + <B> g JC, Hermitian
    SparseOp drive_raise;                   // A^dag pattern (unit coefficients)
    SparseOp drive_lower;                   // A pattern
    DriveSamples<S> drive;
    struct ExtraH {
        SparseOp op;                        // added as coeff(t)*op + h.c. unless herm
        std::function<CxD(double)> coeff;
        bool self_adjoint = false;
    };
    std::vector<ExtraH> extra_h;

    // Dissipators
    std::vector<LindbladChannel> lindblad;   // cavity + radiative + test channels
    double pure_rate = 0.0;                  // gamma_pure/hbar (ps^-1)
    std::vector<uint8_t> qd_offdiag;         // dim*dim mask: QD sectors differ

    // Phonons
    bool phonons_enabled = false;
    PhononKernels kernels;
    int tau_accum_cut = 0;                   // last tau index with non-negligible G
    SparseOp x_cav;                          // g sum_j (|X_j><G| + |B><X_j|) b_j (raw g)
    SparseOp x_cav_dag;

    int dim() const { return cfg.dim(); }

    bool has_drive() const { return !drive.empty(); }

    Cx<S> drive_value(double t) const {
        return has_drive() ? drive.at(t) : Cx<S>();
    }

    // out += pref * (H(t) X - X H(t)); pref is a plain complex scalar.
    void h_commutator_acc(double t, const Mat<S>& x, Mat<S>& out, CxD pref) const {
        sp_mul_acc_left(pref, h_static, x, out);
        sp_mul_acc_right(CxD(-pref.re, -pref.im), x, h_static, out);
        if (has_drive()) {
            Cx<S> c = scalar_constant<S>(b_avg) * drive.at(t);
            Cx<S> cr = pref * c;
            Cx<S> cl = pref * conj(c);
            sp_mul_acc_left(cr, drive_raise, x, out);
            sp_mul_acc_left(cl, drive_lower, x, out);
            sp_mul_acc_right(-cr, x, drive_raise, out);
            sp_mul_acc_right(-cl, x, drive_lower, out);
        }
        for (const auto& eh : extra_h) {
            CxD c = eh.coeff(t);
            sp_mul_acc_left(pref * c, eh.op, x, out);
            sp_mul_acc_right(-(pref * c), x, eh.op, out);
            if (!eh.self_adjoint) {
                SparseOp dag = sparse_adjoint(eh.op); // test-only path, sizes are tiny
                sp_mul_acc_left(pref * conj(c), dag, x, out);
                sp_mul_acc_right(-(pref * conj(c)), x, dag, out);
            }
        }
    }

    // Dense Hamiltonian at time t (value channel), for tests and diagnostics.
    MatD hamiltonian_dense(double t) const {
        MatD h = h_static.dense();
        if (has_drive()) {
            CxD c = CxD(b_avg) * cx_value(drive.at(t));
            for (const auto& e : drive_raise.e) h(e.r, e.c) += c * e.v;
            for (const auto& e : drive_lower.e) h(e.r, e.c) += conj(c) * e.v;
        }
        for (const auto& eh : extra_h) {
            CxD c = eh.coeff(t);
            for (const auto& e : eh.op.e) h(e.r, e.c) += c * e.v;
            if (!eh.self_adjoint)
                for (const auto& e : eh.op.e) h(e.c, e.r) += conj(c * e.v);
        }
        return h;
    }

    // Full generator application: out = L(t)[M].  Phonon tables (if any) must
    // have been prepared by the caller for the current step.
    void apply(double t, const Mat<S>& m, Mat<S>& out, GenWork<S>& w,
               const PhononSweep<S>* ph = nullptr, bool m_hermitian = true) const;
};

// ---- phonon dissipator ----
//
// For each master step at time t the four operator families of the polaron
// dissipator are integrated backwards over the phonon memory window:
//   dO/dtau = -(i/hbar) [H(t - tau), O] - dOmega_c/ds(t - tau) * A^dag,
// starting from O(0) = Xcal(t) = x_cav + Omega_c(t) A^dag.  The diagonal part
// of H supplies the free interaction-picture rotation, the interaction part
// the dressing, and the injection term updates the explicit envelope
// dependence.  The tables O(tau_j) are then contracted with the polaron Green
// functions:
//   L_ph(M) = -(1/hbar^2) int dtau sum_m  G_m [X_m(t), X_m(tau) M]
//                                       + conj(G_m) [M X_m(tau), X_m(t)]
// with X_g = O + O^dag, X_u = i(O - O^dag).
template <class S>
struct PhononSweep {
    double t_ref = -1.0;
    int j_max = 0;                 // valid tau nodes (tau <= min(tau_max, t))
    std::vector<Mat<S>> otab;      // O(tau_j)
    Cx<S> drive_at_t;              // Omega_c(t_ref)
    // workspace
    Mat<S> k1, k2, k3, k4, tmp, oj_dag, p, q, z;

    void ensure(int n, int n_tau) {
        if (int(otab.size()) != n_tau || (n_tau > 0 && otab[0].n != n)) {
            otab.assign(size_t(n_tau), Mat<S>(n));
        }
        if (k1.n != n) {
            k1 = Mat<S>(n); k2 = Mat<S>(n); k3 = Mat<S>(n); k4 = Mat<S>(n);
            tmp = Mat<S>(n); oj_dag = Mat<S>(n); p = Mat<S>(n); q = Mat<S>(n); z = Mat<S>(n);
        }
    }

    // dO/dtau at backward time s = t_ref - tau.
    void rhs(const Generator<S>& gen, double s, const Mat<S>& o, Mat<S>& out) {
        out.set_zero();
        gen.h_commutator_acc(s, o, out, CxD(0.0, -1.0 / kHbar));
        if (gen.has_drive()) {
            Cx<S> dinj = -1.0 * gen.drive.deriv_at(s);
            for (const auto& e : gen.drive_raise.e)
                out(e.r, e.c) += dinj * (e.v * Cx<S>(scalar_constant<S>(1.0)));
        }
    }

    void prepare(const Generator<S>& gen, double t) {
        const int n = gen.dim();
        const auto& k = gen.kernels;
        ensure(n, k.n_tau());
        t_ref = t;
        j_max = std::min(k.n_tau() - 1, int(std::floor(t / k.d_tau + 1e-9)));
        j_max = std::min(j_max, gen.tau_accum_cut);
        if (j_max < 0) j_max = 0;

        drive_at_t = gen.drive_value(t);

        // O(0) = x_cav + Omega_c(t) A^dag
        Mat<S>& o0 = otab[0];
        o0.set_zero();
        for (const auto& e : gen.x_cav.e) o0(e.r, e.c) += e.v * Cx<S>(scalar_constant<S>(1.0));
        if (gen.has_drive())
            for (const auto& e : gen.drive_raise.e)
                o0(e.r, e.c) += drive_at_t * (e.v * Cx<S>(scalar_constant<S>(1.0)));

        const double dtau = k.d_tau;
        for (int j = 0; j < j_max; ++j) {
            const double tau = j * dtau;
            const Mat<S>& o = otab[j];
            Mat<S>& onext = otab[j + 1];
            // classic RK4 in tau
            rhs(gen, t - tau, o, k1);
            tmp = o; axpy(0.5 * dtau, k1, tmp);
            rhs(gen, t - tau - 0.5 * dtau, tmp, k2);
            tmp = o; axpy(0.5 * dtau, k2, tmp);
            rhs(gen, t - tau - 0.5 * dtau, tmp, k3);
            tmp = o; axpy(dtau, k3, tmp);
            rhs(gen, t - tau - dtau, tmp, k4);
            onext = o;
            axpy(dtau / 6.0, k1, onext);
            axpy(dtau / 3.0, k2, onext);
            axpy(dtau / 3.0, k3, onext);
            axpy(dtau / 6.0, k4, onext);
        }
    }

    // out += alpha * [X_m(t_ref), W] for m in {g,u}; X_m(t) assembled from the
    // sparse cavity part and the drive pattern with the stored drive value.
    void xm_commutator_acc(const Generator<S>& gen, bool g_channel, const Mat<S>& w,
                           Mat<S>& out, CxD alpha) const {
        // X_g = (x_cav + x_cav^dag) + (c A^dag + conj(c) A)
        // X_u = i(x_cav - x_cav^dag) + (i c A^dag - i conj(c) A)
        CxD a_cav = alpha, a_cavd = alpha;
        Cx<S> c = drive_at_t;
        Cx<S> a_r, a_l;
        if (g_channel) {
            a_r = alpha * c;
            a_l = alpha * conj(c);
        } else {
            a_cav = alpha * CxD(0.0, 1.0);
            a_cavd = alpha * CxD(0.0, -1.0);
            a_r = alpha * cx_i_times(c);
            a_l = -1.0 * (alpha * cx_i_times(conj(c)));
        }
        sp_mul_acc_left(a_cav, gen.x_cav, w, out);
        sp_mul_acc_right(-a_cav, w, gen.x_cav, out);
        sp_mul_acc_left(a_cavd, gen.x_cav_dag, w, out);
        sp_mul_acc_right(-a_cavd, w, gen.x_cav_dag, out);
        if (gen.has_drive()) {
            sp_mul_acc_left(a_r, gen.drive_raise, w, out);
            sp_mul_acc_right(-a_r, w, gen.drive_raise, out);
            sp_mul_acc_left(a_l, gen.drive_lower, w, out);
            sp_mul_acc_right(-a_l, w, gen.drive_lower, out);
        }
    }

    void apply(const Generator<S>& gen, const Mat<S>& m, Mat<S>& out, bool m_hermitian) {
        const auto& ker = gen.kernels;
        const double pref = -ker.d_tau / (kHbar * kHbar);
        for (int j = 0; j <= j_max; ++j) {
            const double wj = (j == 0 || j == j_max) ? 0.5 : 1.0;
            const Mat<S>& oj = otab[j];
            adjoint_into(oj, oj_dag);
            // P = O(tau) M, Q = O(tau)^dag M
            p.set_zero(); mul_acc(oj, m, p, 1.0);
            q.set_zero(); mul_acc(oj_dag, m, q, 1.0);
            CxD gg = ker.Gg[j], gu = ker.Gu[j];

            // g channel: U = P + Q (= X_g M); V = M X_g.
            // Z = G U - conj(G) V, out += pref*w*[X_g, Z]
            z.set_zero();
            if (m_hermitian) {
                // V = U^dag
                for (size_t i = 0; i < z.a.size(); ++i) {
                    Cx<S> u = p.a[i] + q.a[i];
                    z.a[i] += gg * u;
                }
                // subtract conj(G) U^dag via transpose-conjugate indexing
                const int n = m.n;
                for (int r = 0; r < n; ++r)
                    for (int cIdx = 0; cIdx < n; ++cIdx) {
                        Cx<S> u_rc = p(cIdx, r) + q(cIdx, r);
                        z(r, cIdx) -= conj(gg) * conj(u_rc);
                    }
            } else {
                for (size_t i = 0; i < z.a.size(); ++i) z.a[i] += gg * (p.a[i] + q.a[i]);
                // V = M O + M O^dag
                tmp.set_zero();
                mul_acc(m, oj, tmp, 1.0);
                mul_acc(m, oj_dag, tmp, 1.0);
                for (size_t i = 0; i < z.a.size(); ++i) z.a[i] -= conj(gg) * tmp.a[i];
            }
            xm_commutator_acc(gen, true, z, out, CxD(pref * wj));

            // u channel: U = i(P - Q)
            z.set_zero();
            if (m_hermitian) {
                for (size_t i = 0; i < z.a.size(); ++i) {
                    Cx<S> u = cx_i_times(p.a[i] - q.a[i]);
                    z.a[i] += gu * u;
                }
                const int n = m.n;
                for (int r = 0; r < n; ++r)
                    for (int cIdx = 0; cIdx < n; ++cIdx) {
                        Cx<S> u_rc = cx_i_times(p(cIdx, r) - q(cIdx, r));
                        z(r, cIdx) -= conj(gu) * conj(u_rc);
                    }
            } else {
                for (size_t i = 0; i < z.a.size(); ++i)
                    z.a[i] += gu * cx_i_times(p.a[i] - q.a[i]);
                tmp.set_zero();
                mul_acc(m, oj, tmp, 1.0);
                scale(tmp, CxD(-1.0));
                mul_acc(m, oj_dag, tmp, 1.0);
                // tmp = M O^dag - M O = -M (O - O^dag); V_u = M i(O - O^dag) = -i*(-tmp)... V_u = i(M O - M O^dag)
                for (size_t i = 0; i < z.a.size(); ++i)
                    z.a[i] -= conj(gu) * cx_i_times(-1.0 * tmp.a[i]);
            }
            xm_commutator_acc(gen, false, z, out, CxD(pref * wj));
        }
    }
};

template <class S>
void Generator<S>::apply(double t, const Mat<S>& m, Mat<S>& out, GenWork<S>& w,
                         const PhononSweep<S>* ph, bool m_hermitian) const {
    const int n = dim();
    w.ensure(n);
    out.set_zero();

    // coherent part: -(i/hbar)[H, M]
    h_commutator_acc(t, m, out, CxD(0.0, -1.0 / kHbar));

    // Lindblad channels: rate*(2 s M s^dag - s^dag s M - M s^dag s)
    for (const auto& ch : lindblad) {
        if (ch.rate == 0.0) continue;
        w.t1.set_zero();
        sp_mul_acc_left(1.0, ch.sigma, m, w.t1);
        sp_mul_acc_right(2.0 * ch.rate, w.t1, ch.sigma_dag, out);
        for (int i = 0; i < n; ++i) {
            double di = ch.sds_diag[i];
            if (di == 0.0) continue;
            double f = ch.rate * di;
            for (int j = 0; j < n; ++j) out(i, j) -= f * m(i, j);
            for (int j = 0; j < n; ++j) out(j, i) -= f * m(j, i);
        }
    }

    // pure dephasing: -(1/2) gamma_pure/hbar on QD-sector off-diagonals
    if (pure_rate != 0.0) {
        const double f = 0.5 * pure_rate;
        for (size_t i = 0; i < m.a.size(); ++i)
            if (qd_offdiag[i]) out.a[i] -= f * m.a[i];
    }

    if (phonons_enabled && ph != nullptr)
        const_cast<PhononSweep<S>*>(ph)->apply(*this, m, out, m_hermitian);
}

// ---- construction ----

struct GeneratorOptions {
    double support_dt = 0.005; // drive sample spacing (ps)
    double support_t_end = 130.0;
    double tau_max = 5.0;
    double d_tau = 0.02;
    bool enable_phonons = true; // combined with params.phonons
};

// Assembles the drive support samples from a shaped pulse (envelope relative
// to omega_L) plus the rotating-frame residual carrier, and optionally a
// two-photon-absorption initialization pulse at the TPA carrier.
template <class S>
DriveSamples<S> make_drive_samples(const SystemParams& sys, const SampledPulse<S>* control,
                                   const S* delta_l, const GeneratorOptions& opt,
                                   const SampledPulse<S>* tpa = nullptr) {
    DriveSamples<S> d;
    d.dt = opt.support_dt;
    if (!control && !tpa) return d;
    int n = int(std::ceil(opt.support_t_end / opt.support_dt)) + 1;
    d.omega.assign(n, Cx<S>());
    const double delta_b = sys.frame_delta_b_mev();
    for (int k = 0; k < n; ++k) {
        double t = k * opt.support_dt;
        Cx<S> v{};
        if (control) {
            S phase = (scalar_constant<S>(delta_b) + *delta_l) *
                      scalar_constant<S>(-t / kHbar);
            v += cx_expi(phase) * sample_envelope(*control, t);
        }
        if (tpa) {
            S phase = scalar_constant<S>(-0.5 * delta_b * t / kHbar);
            v += cx_expi(phase) * sample_envelope(*tpa, t);
        }
        d.omega[k] = v;
    }
    // centered differences for the envelope derivative
    d.domega.assign(n, Cx<S>());
    const double inv2dt = 1.0 / (2.0 * opt.support_dt);
    for (int k = 1; k + 1 < n; ++k)
        d.domega[k] = inv2dt * (d.omega[k + 1] - d.omega[k - 1]);
    d.domega[0] = (1.0 / opt.support_dt) * (d.omega[1] - d.omega[0]);
    d.domega[n - 1] = (1.0 / opt.support_dt) * (d.omega[n - 1] - d.omega[n - 2]);
    return d;
}

template <class S>
Generator<S> make_generator(const SystemParams& sys, const SpaceConfig& cfg,
                            DriveSamples<S> drive = {}, const GeneratorOptions& opt = {}) {
    sys.validate();
    cfg.validate();
    Generator<S> gen;
    gen.cfg = cfg;
    gen.params = sys;
    const int n = cfg.dim();

    const bool ph = sys.phonons && opt.enable_phonons;
    gen.b_avg = ph ? displacement_average(sys) : 1.0;

    // frame diagonal + JC coupling (scaled by <B>)
    SparseOp h(n);
    const double dx = sys.frame_delta_x_mev();
    const double db = sys.frame_delta_b_mev();
    for (int nh = 0; nh < cfg.nph(); ++nh)
        for (int nv = 0; nv < cfg.nph(); ++nv) {
            h.add(cfg.index(QdLevel::XH, nh, nv), cfg.index(QdLevel::XH, nh, nv), CxD(dx));
            h.add(cfg.index(QdLevel::XV, nh, nv), cfg.index(QdLevel::XV, nh, nv), CxD(dx));
            h.add(cfg.index(QdLevel::B, nh, nv), cfg.index(QdLevel::B, nh, nv), CxD(db));
        }
    SparseOp bh = sparse_annihilator(Mode::H, cfg);
    SparseOp bv = sparse_annihilator(Mode::V, cfg);
    SparseOp bh_dag = sparse_adjoint(bh);
    SparseOp bv_dag = sparse_adjoint(bv);
    // raising QD x annihilating photon, per linear mode
    SparseOp raise_h = sparse_sum(sparse_projector(QdLevel::XH, QdLevel::G, cfg),
                                  sparse_projector(QdLevel::B, QdLevel::XH, cfg));
    SparseOp raise_v = sparse_sum(sparse_projector(QdLevel::XV, QdLevel::G, cfg),
                                  sparse_projector(QdLevel::B, QdLevel::XV, cfg));
    SparseOp jc = sparse_sum(sparse_mul(raise_h, bh), sparse_mul(raise_v, bv));
    SparseOp jc_full = sparse_sum(jc, sparse_adjoint(jc));
    h = sparse_sum(h, sparse_scale(jc_full, CxD(gen.b_avg * sys.g_mev)));
    gen.h_static = h;

    // drive patterns: A^dag = |X_sig+><G| + |B><X_sig-|
    SparseOp a_dag = sparse_sum(
        sparse_exciton_sigma_projector(true, QdLevel::G, true, cfg),
        sparse_exciton_sigma_projector(false, QdLevel::B, false, cfg));
    gen.drive_raise = a_dag;
    gen.drive_lower = sparse_adjoint(a_dag);
    gen.drive = std::move(drive);

    // cavity loss: kappa/2 * (2 b M b^dag - {n, M})
    auto make_channel = [n](double rate, const SparseOp& s) {
        LindbladChannel ch;
        ch.rate = rate;
        ch.sigma = s;
        ch.sigma_dag = sparse_adjoint(s);
        SparseOp sds = sparse_mul(ch.sigma_dag, ch.sigma);
        ch.sds_diag.assign(n, 0.0);
        for (const auto& e : sds.e)
            if (e.r == e.c) ch.sds_diag[e.r] += e.v.re;
        return ch;
    };
    if (sys.kappa_per_ps != 0.0) {
        gen.lindblad.push_back(make_channel(0.5 * sys.kappa_per_ps, bh));
        gen.lindblad.push_back(make_channel(0.5 * sys.kappa_per_ps, bv));
    }

    // radiative decay into leaky modes, <B>^2-rescaled; L as written doubles
    // the population rate, so the channel rate is gamma_rad/hbar.
    const double grad = gen.b_avg * gen.b_avg * sys.gamma_rad_mev() / kHbar;
    if (grad != 0.0) {
        for (QdLevel x : {QdLevel::XH, QdLevel::XV}) {
            gen.lindblad.push_back(make_channel(grad, sparse_projector(QdLevel::G, x, cfg)));
            gen.lindblad.push_back(make_channel(grad, sparse_projector(x, QdLevel::B, cfg)));
        }
    }

    // pure dephasing mask
    gen.pure_rate = sys.gamma_pure_mev() / kHbar;
    gen.qd_offdiag.assign(size_t(n) * n, 0);
    const int block = cfg.nph() * cfg.nph();
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (r / block != c / block) gen.qd_offdiag[size_t(r) * n + c] = 1;

    // phonon pieces
    gen.phonons_enabled = ph;
    if (ph) {
        gen.kernels = make_phonon_kernels(sys, opt.tau_max, opt.d_tau);
        gen.x_cav = sparse_scale(jc, CxD(sys.g_mev)); // raw g; <B>^2 sits in G_m
        gen.x_cav_dag = sparse_adjoint(gen.x_cav);
        // truncate the tau accumulation where the Green functions are negligible
        double gmax = 0.0;
        for (int j = 0; j < gen.kernels.n_tau(); ++j)
            gmax = std::max(gmax, std::sqrt(norm2(gen.kernels.Gg[j])) +
                                      std::sqrt(norm2(gen.kernels.Gu[j])));
        int cut = gen.kernels.n_tau() - 1;
        while (cut > 1) {
            double gj = std::sqrt(norm2(gen.kernels.Gg[cut])) +
                        std::sqrt(norm2(gen.kernels.Gu[cut]));
            if (gj > 1e-10 * gmax) break;
            --cut;
        }
        gen.tau_accum_cut = cut;
    }
    return gen;
}

} // namespace qraman
