#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace optomech {

// Drive amplitude and per-membrane parameters. eta_i = g_i / omega_i, so
// g_i = eta_i * omega_i and delta0 = sum g_i^2 / omega_i.
struct DriveConfig {
    double omega_rabi = 0.0;        // Omega
    std::vector<double> eta;        // Lamb-Dicke parameters
    std::vector<double> omega_m;    // membrane frequencies
    double gamma_c = 0.0;           // cavity decay (validation only)
    std::vector<double> gamma_m;    // membrane decays (validation only)
    double delta0 = 0.0;            // sum g_i^2 / omega_i

    int n_modes() const { return static_cast<int>(eta.size()); }
    double g(int i) const { return eta.at(i) * omega_m.at(i); }
};

inline DriveConfig make_drive_config(double omega_rabi, std::vector<double> eta,
                                     std::vector<double> omega_m, double gamma_c = 0.0,
                                     std::vector<double> gamma_m = {}) {
    if (eta.size() != omega_m.size())
        throw std::invalid_argument("make_drive_config: eta and omega_m sizes differ");
    if (eta.empty())
        throw std::invalid_argument("make_drive_config: need at least one membrane");
    if (gamma_m.empty())
        gamma_m.assign(eta.size(), 0.0);
    if (gamma_m.size() != eta.size())
        throw std::invalid_argument("make_drive_config: gamma_m size mismatch");
    DriveConfig cfg;
    cfg.omega_rabi = omega_rabi;
    cfg.eta = std::move(eta);
    cfg.omega_m = std::move(omega_m);
    cfg.gamma_c = gamma_c;
    cfg.gamma_m = std::move(gamma_m);
    for (std::size_t i = 0; i < cfg.eta.size(); ++i) {
        if (!(cfg.eta[i] > 0.0))
            throw std::invalid_argument("make_drive_config: eta must be positive");
        if (!(cfg.omega_m[i] > 0.0))
            throw std::invalid_argument("make_drive_config: omega_m must be positive");
        const double g = cfg.eta[i] * cfg.omega_m[i];
        cfg.delta0 += g * g / cfg.omega_m[i];
    }
    return cfg;
}

inline void validate_delta0(const DriveConfig& cfg, double rel_tol = 1e-12) {
    double d0 = 0.0;
    for (std::size_t i = 0; i < cfg.eta.size(); ++i) {
        const double g = cfg.eta[i] * cfg.omega_m[i];
        d0 += g * g / cfg.omega_m[i];
    }
    if (std::abs(d0 - cfg.delta0) > rel_tol * std::max(std::abs(d0), 1e-300))
        throw std::invalid_argument("DriveConfig: delta0 inconsistent with eta/omega_m");
}

enum class PulseKind { Carrier, Red, Blue };

inline std::string to_string(PulseKind k) {
    switch (k) {
        case PulseKind::Carrier: return "carrier";
        case PulseKind::Red: return "red";
        case PulseKind::Blue: return "blue";
    }
    return "?";
}

// One square drive segment, pinned to exact resonance for its kind:
// carrier at omega_0, red_i at omega_0 - omega_i, blue_i at omega_0 + omega_i.
struct Pulse {
    PulseKind kind = PulseKind::Carrier;
    int membrane = -1;  // ignored for carrier
    double phase = 0.0;
    double duration = 0.0;
};

inline Pulse make_pulse(PulseKind kind, int membrane, double phase, double duration,
                        int n_modes) {
    if (duration < 0.0)
        throw std::invalid_argument("make_pulse: negative duration");
    if (kind != PulseKind::Carrier && (membrane < 0 || membrane >= n_modes))
        throw std::invalid_argument("make_pulse: membrane index out of range");
    return {kind, kind == PulseKind::Carrier ? -1 : membrane, phase, duration};
}

// Detuning of the drive from omega_0 implied by the pulse kind.
inline double implied_detuning(const Pulse& p, const DriveConfig& cfg) {
    switch (p.kind) {
        case PulseKind::Carrier: return 0.0;
        case PulseKind::Red: return -cfg.omega_m.at(p.membrane);
        case PulseKind::Blue: return +cfg.omega_m.at(p.membrane);
    }
    return 0.0;
}

}  // namespace optomech
