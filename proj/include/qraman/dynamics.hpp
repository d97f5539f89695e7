// dynamics.hpp - fixed-step RK4 propagation of the density matrix under the
// full time-dependent generator, generic over the numeric scalar.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qraman/generator.hpp"

namespace qraman {

struct PropagateOptions {
    double trace_tol = 1e-6;   // abort threshold on |tr rho - 1|
    double eigen_tol = 1e-6;   // abort threshold on negative eigenvalues
    int health_stride = 25;    // steps between inline health checks
    bool check_health = true;
};

// RK4 with the phonon operator tables recomputed once per step and shared by
// the four stage evaluations.  The observer is called with (step, t, rho)
// after the initial state and after every step.
template <class S, class Obs>
void propagate_observe(const Generator<S>& gen, Mat<S>& rho, double t0, double dt, int nsteps,
                       Obs&& obs, const PropagateOptions& opt = {}) {
    const int n = gen.dim();
    GenWork<S> work;
    PhononSweep<S> sweep;
    Mat<S> k1(n), k2(n), k3(n), k4(n), tmp(n);

    auto health = [&](int step, const Mat<S>& r) {
        if (!opt.check_health) return;
        MatD v = value_matrix(r);
        double terr = std::abs(trace(v).re - 1.0);
        if (terr > opt.trace_tol)
            throw NumericalError("propagate: trace drift " + std::to_string(terr) + " at step " +
                                 std::to_string(step) +
                                 "; advisory: reduce dt (current " + std::to_string(dt) + " ps)");
        if (!cholesky_shifted_psd(v, opt.eigen_tol))
            throw NumericalError("propagate: negative eigenvalue beyond -" +
                                 std::to_string(opt.eigen_tol) + " at step " + std::to_string(step) +
                                 "; advisory: reduce dt (current " + std::to_string(dt) + " ps)");
    };

    obs(0, t0, rho);
    for (int step = 0; step < nsteps; ++step) {
        const double t = t0 + step * dt;
        const PhononSweep<S>* ph = nullptr;
        if (gen.phonons_enabled) {
            sweep.prepare(gen, t);
            ph = &sweep;
        }
        gen.apply(t, rho, k1, work, ph);
        tmp = rho; axpy(0.5 * dt, k1, tmp);
        gen.apply(t + 0.5 * dt, tmp, k2, work, ph);
        tmp = rho; axpy(0.5 * dt, k2, tmp);
        gen.apply(t + 0.5 * dt, tmp, k3, work, ph);
        tmp = rho; axpy(dt, k3, tmp);
        gen.apply(t + dt, tmp, k4, work, ph);
        axpy(dt / 6.0, k1, rho);
        axpy(dt / 3.0, k2, rho);
        axpy(dt / 3.0, k3, rho);
        axpy(dt / 6.0, k4, rho);

        if ((step + 1) % opt.health_stride == 0 || step + 1 == nsteps) health(step + 1, rho);
        obs(step + 1, t + dt, rho);
    }
}

struct TrajectoryMeta {
    uint64_t params_hash = 0;
    double dt = 0.0;
};

// Time-indexed density matrices on a uniform grid (plain scalar runs).
struct Trajectory {
    std::vector<double> t_grid;
    std::vector<MatD> states;
    TrajectoryMeta meta;
};

inline Trajectory propagate(const Generator<double>& gen, const MatD& rho0, double dt,
                            int nsteps, const PropagateOptions& opt = {}) {
    Trajectory traj;
    traj.meta.params_hash = gen.params.hash();
    traj.meta.dt = dt;
    traj.t_grid.reserve(nsteps + 1);
    traj.states.reserve(nsteps + 1);
    MatD rho = rho0;
    propagate_observe(gen, rho, 0.0, dt, nsteps,
                      [&](int, double t, const MatD& r) {
                          traj.t_grid.push_back(t);
                          traj.states.push_back(r);
                      },
                      opt);
    return traj;
}

struct ConvergenceReport {
    double dt = 0.0;
    double max_frobenius_deviation = 0.0; // between dt and dt/2 runs
    bool advisory = false;
    std::string advisory_text;
};

// Propagates at dt and dt/2 and reports the maximal Frobenius deviation on
// the shared grid points.
inline ConvergenceReport step_convergence_report(const Generator<double>& gen, const MatD& rho0,
                                                 double dt, int nsteps) {
    ConvergenceReport rep;
    rep.dt = dt;
    try {
        Trajectory a = propagate(gen, rho0, dt, nsteps);
        Trajectory b = propagate(gen, rho0, 0.5 * dt, 2 * nsteps);
        for (int k = 0; k <= nsteps; ++k) {
            MatD d = a.states[k] - b.states[2 * k];
            rep.max_frobenius_deviation = std::max(rep.max_frobenius_deviation, frobenius(d));
        }
    } catch (const NumericalError& e) {
        rep.advisory = true;
        rep.advisory_text = e.what();
    }
    return rep;
}

} // namespace qraman
