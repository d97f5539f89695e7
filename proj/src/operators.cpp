#include "qraman/operators.hpp"

#include <cmath>

namespace qraman {

SparseOp sparse_projector(QdLevel s1, QdLevel s2, const SpaceConfig& cfg) {
    cfg.validate();
    SparseOp op(cfg.dim());
    for (int nh = 0; nh < cfg.nph(); ++nh)
        for (int nv = 0; nv < cfg.nph(); ++nv)
            op.e.push_back({cfg.index(s1, nh, nv), cfg.index(s2, nh, nv), CxD(1.0)});
    return op;
}

static SparseOp linear_annihilator(bool horizontal, const SpaceConfig& cfg) {
    SparseOp op(cfg.dim());
    for (int q = 0; q < 4; ++q) {
        QdLevel ql = static_cast<QdLevel>(q);
        for (int nh = 0; nh < cfg.nph(); ++nh)
            for (int nv = 0; nv < cfg.nph(); ++nv) {
                if (horizontal && nh > 0)
                    op.e.push_back({cfg.index(ql, nh - 1, nv), cfg.index(ql, nh, nv),
                                    CxD(std::sqrt(double(nh)))});
                if (!horizontal && nv > 0)
                    op.e.push_back({cfg.index(ql, nh, nv - 1), cfg.index(ql, nh, nv),
                                    CxD(std::sqrt(double(nv)))});
            }
    }
    return op;
}

SparseOp sparse_annihilator(Mode mode, const SpaceConfig& cfg) {
    cfg.validate();
    switch (mode) {
    case Mode::H: return linear_annihilator(true, cfg);
    case Mode::V: return linear_annihilator(false, cfg);
    case Mode::SigmaPlus: {
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        SparseOp op = sparse_sum(sparse_scale(linear_annihilator(true, cfg), CxD(inv_sqrt2)),
                                 sparse_scale(linear_annihilator(false, cfg), CxD(0.0, inv_sqrt2)));
        return op;
    }
    case Mode::SigmaMinus: {
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        SparseOp op = sparse_sum(sparse_scale(linear_annihilator(true, cfg), CxD(inv_sqrt2)),
                                 sparse_scale(linear_annihilator(false, cfg), CxD(0.0, -inv_sqrt2)));
        return op;
    }
    }
    throw std::invalid_argument("invalid cavity mode");
}

MatD build_projector(QdLevel s1, QdLevel s2, const SpaceConfig& cfg) {
    return sparse_projector(s1, s2, cfg).dense();
}

MatD build_annihilator(Mode mode, const SpaceConfig& cfg) {
    return sparse_annihilator(mode, cfg).dense();
}

CxD expectation(const MatD& rho, const MatD& op) {
    if (rho.n != op.n) throw std::invalid_argument("expectation: dimension mismatch");
    return trace_prod(rho, op);
}

DensityDiagnostics check_density(const MatD& rho) {
    DensityDiagnostics d;
    d.trace_error = std::abs(trace(rho).re - 1.0);
    // Imaginary trace counts as trace error too.
    d.trace_error = std::max(d.trace_error, std::abs(trace(rho).im));
    d.herm_error = hermiticity_error(rho);
    d.min_eigenvalue = min_eigenvalue(rho);
    return d;
}

SparseOp sparse_exciton_sigma_projector(bool plus, QdLevel other, bool exciton_is_ket,
                                        const SpaceConfig& cfg) {
    // |X_sig+-> = (|X_H> -+ i |X_V>)/sqrt(2)
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CxD ch(inv_sqrt2, 0.0);
    CxD cv = plus ? CxD(0.0, -inv_sqrt2) : CxD(0.0, inv_sqrt2);
    SparseOp op(cfg.dim());
    if (exciton_is_ket) {
        // |X_sig><other|
        op = sparse_sum(sparse_scale(sparse_projector(QdLevel::XH, other, cfg), ch),
                        sparse_scale(sparse_projector(QdLevel::XV, other, cfg), cv));
    } else {
        // |other><X_sig|  (bra picks up conjugated coefficients)
        op = sparse_sum(sparse_scale(sparse_projector(other, QdLevel::XH, cfg), conj(ch)),
                        sparse_scale(sparse_projector(other, QdLevel::XV, cfg), conj(cv)));
    }
    return op;
}

} // namespace qraman
