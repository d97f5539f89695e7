// space.hpp - composite Hilbert space: four quantum-dot configurations
// tensored with two truncated cavity Fock modes.

#pragma once

#include <stdexcept>
#include <string>

namespace qraman {

enum class QdLevel : int { G = 0, XH = 1, XV = 2, B = 3 };

enum class Mode : int { H = 0, V = 1, SigmaPlus = 2, SigmaMinus = 3 };

struct SpaceConfig {
    int n_max = 2; // photon-number cutoff per cavity mode

    int nph() const { return n_max + 1; }
    int dim() const { return 4 * nph() * nph(); }

    // Basis ordering: index = qd*(n_max+1)^2 + n_H*(n_max+1) + n_V.
    int index(QdLevel q, int n_h, int n_v) const {
        return static_cast<int>(q) * nph() * nph() + n_h * nph() + n_v;
    }

    void validate() const {
        if (n_max < 1) throw std::invalid_argument("SpaceConfig: n_max must be >= 1");
    }
};

inline QdLevel qd_level_from_string(const std::string& s) {
    if (s == "G") return QdLevel::G;
    if (s == "XH" || s == "X_H") return QdLevel::XH;
    if (s == "XV" || s == "X_V") return QdLevel::XV;
    if (s == "B") return QdLevel::B;
    throw std::invalid_argument("unknown quantum-dot level label: " + s);
}

} // namespace qraman
