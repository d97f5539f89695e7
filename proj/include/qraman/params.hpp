// params.hpp - physical constants and system parameters.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qraman {

inline constexpr double kHbar = 0.6582119;   // meV ps
inline constexpr double kBoltzmann = 0.086173; // meV / K

enum class DetuningReference { BX, XG };

// All physical constants of the quantum-dot / bimodal-cavity system.
// Energies in meV, rates in ps^-1 unless noted.
struct SystemParams {
    double g_mev = kHbar / 10.0;          // QD-cavity coupling (meV); hbar/10 ps^-1
    double kappa_per_ps = (kHbar / 10.0) / kHbar / 0.35; // cavity loss rate
    double gamma_rad_uev = 2.0;           // radiative rate into leaky modes (ueV)
    double gamma_pure_slope_uev_per_k = 1.0; // pure-dephasing slope (ueV/K)
    double temperature_k = 4.0;
    double e_x_mev = 1409.0;              // exciton energy
    double binding_mev = 3.0;             // biexciton binding energy
    double delta_c_mev = 0.3;             // cavity detuning in the chosen convention
    DetuningReference delta_c_reference = DetuningReference::BX;
    double delta_fss_mev = 0.0;           // fine-structure splitting, fixed 0 in v1
    double alpha_ph_ps2 = 0.03;           // phonon coupling
    double hbar_omega_b_mev = 1.0;        // phonon cutoff energy
    bool phonons = true;

    void validate() const {
        if (g_mev < 0 || kappa_per_ps < 0 || gamma_rad_uev < 0 || alpha_ph_ps2 < 0 ||
            hbar_omega_b_mev < 0)
            throw std::invalid_argument("SystemParams: rates and couplings must be >= 0");
        if (temperature_k < 0) throw std::invalid_argument("SystemParams: temperature must be >= 0");
        if (delta_fss_mev != 0.0)
            throw std::invalid_argument("SystemParams: nonzero fine-structure splitting unsupported");
    }

    double e_b_mev() const { return 2.0 * e_x_mev - binding_mev; }

    // Detunings in both conventions; Delta_C^BX = Delta_C^XG + binding.
    double delta_c_bx_mev() const {
        return delta_c_reference == DetuningReference::BX ? delta_c_mev
                                                          : delta_c_mev + binding_mev;
    }
    double delta_c_xg_mev() const {
        return delta_c_reference == DetuningReference::XG ? delta_c_mev
                                                          : delta_c_mev - binding_mev;
    }

    // Absolute cavity energy; display only, the dynamics carry detunings.
    double hbar_omega_c_mev() const { return e_x_mev + delta_c_xg_mev(); }

    // Rotating frame (omega_c for both cavity modes): remaining diagonal energies.
    double frame_delta_x_mev() const { return -delta_c_xg_mev(); }
    double frame_delta_b_mev() const { return -(delta_c_bx_mev() + delta_c_xg_mev()); }

    double gamma_pure_mev() const {
        return gamma_pure_slope_uev_per_k * temperature_k * 1e-3;
    }
    double gamma_rad_mev() const { return gamma_rad_uev * 1e-3; }

    // Static coherence decay rates of the analytic Raman kernel (ps^-1).
    double big_gamma_xg_per_ps() const {
        return (gamma_pure_mev() + gamma_rad_mev()) / kHbar;
    }
    double big_gamma_bx_per_ps() const {
        return (gamma_pure_mev() + 3.0 * gamma_rad_mev()) / kHbar;
    }

    uint64_t hash() const {
        auto mix = [](uint64_t h, double x) {
            uint64_t b;
            static_assert(sizeof(b) == sizeof(x));
            std::memcpy(&b, &x, sizeof(b));
            h ^= b + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            return h;
        };
        uint64_t h = 1469598103934665603ull;
        h = mix(h, g_mev); h = mix(h, kappa_per_ps); h = mix(h, gamma_rad_uev);
        h = mix(h, gamma_pure_slope_uev_per_k); h = mix(h, temperature_k);
        h = mix(h, e_x_mev); h = mix(h, binding_mev); h = mix(h, delta_c_mev);
        h = mix(h, double(static_cast<int>(delta_c_reference)));
        h = mix(h, alpha_ph_ps2); h = mix(h, hbar_omega_b_mev);
        h = mix(h, phonons ? 1.0 : 0.0);
        return h;
    }
};

} // namespace qraman
