// operators.hpp - operator construction on the composite space and
// density-matrix diagnostics.

#pragma once

#include "qraman/matrix.hpp"
#include "qraman/space.hpp"

namespace qraman {

// |s1><s2| tensor identity on both photon modes.
SparseOp sparse_projector(QdLevel s1, QdLevel s2, const SpaceConfig& cfg);

// Truncated ladder operator embedded in the composite space.  Circular modes
// are b_sig+- = (b_H +- i b_V)/sqrt(2).
SparseOp sparse_annihilator(Mode mode, const SpaceConfig& cfg);

// Dense variants (the public Operator type of the artifact).
MatD build_projector(QdLevel s1, QdLevel s2, const SpaceConfig& cfg);
MatD build_annihilator(Mode mode, const SpaceConfig& cfg);

// tr(rho * op); throws on dimension mismatch.
CxD expectation(const MatD& rho, const MatD& op);

struct DensityDiagnostics {
    double trace_error = 0.0;   // |tr(rho) - 1|
    double herm_error = 0.0;    // max |rho - rho^dagger| elementwise
    double min_eigenvalue = 0.0;
};

DensityDiagnostics check_density(const MatD& rho);

// The circular exciton combinations used throughout: with the photon modes
// b_sig+- = (b_H +- i b_V)/sqrt(2), realizing |X_sig+-> = (|X_H> -+ i|X_V>)/sqrt(2)
// makes the circular-basis interaction Hamiltonian expand exactly to the
// linear-basis one, and routes the sigma+ driven Raman photon into the
// b_sig- channel.
SparseOp sparse_exciton_sigma_projector(bool plus, QdLevel other, bool exciton_is_ket,
                                        const SpaceConfig& cfg);

} // namespace qraman
