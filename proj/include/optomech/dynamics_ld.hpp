#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "optomech/drive.hpp"
#include "optomech/errors.hpp"
#include "optomech/hilbert.hpp"

namespace optomech {

// Closed-form Lamb-Dicke propagators. Conventions follow the printed
// operator forms: carrier rotates |g>/<->|e> at angle Omega*t; the red
// (blue) sideband on membrane i rotates |g,m> <-> |e,m-1> (|e,m+1>) with
// block angle Omega*eta_i*sqrt(idx)*t where idx is the larger occupation
// of the pair. Phase factors: -i e^{-i phi} on the g -> e leg and
// -i e^{+i phi} on the e -> g leg.

namespace detail {

inline double block_rabi(const DriveConfig& cfg, int membrane, int idx) {
    return cfg.omega_rabi * cfg.eta.at(membrane) * std::sqrt(static_cast<double>(idx));
}

}  // namespace detail

inline StateVector apply_carrier(const StateVector& psi, double phase, double duration,
                                 const DriveConfig& cfg) {
    const double theta = cfg.omega_rabi * duration;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Complex down = Complex{0.0, -1.0} * std::polar(1.0, -phase) * s;  // g -> e
    const Complex up = Complex{0.0, -1.0} * std::polar(1.0, +phase) * s;    // e -> g

    StateVector out(psi.n_modes(), psi.cutoff());
    for (const auto& [label, amp] : psi.amplitudes()) {
        out.accumulate(label, amp * c);
        BasisLabel partner = label;
        partner.excited = !label.excited;
        out.accumulate(partner, amp * (label.excited ? up : down));
    }
    out.prune();
    return out;
}

namespace detail {

inline StateVector apply_sideband(const StateVector& psi, int membrane, double phase,
                                  double duration, const DriveConfig& cfg, bool blue) {
    if (membrane < 0 || membrane >= psi.n_modes())
        throw std::invalid_argument("sideband: membrane index out of range");

    StateVector out(psi.n_modes(), psi.cutoff());
    for (const auto& [label, amp] : psi.amplitudes()) {
        const int m = label.occupations[membrane];
        // Block index (the sqrt argument) and occupation change on transfer.
        int idx, delta;
        if (!blue) {
            idx = label.excited ? m + 1 : m;
            delta = label.excited ? +1 : -1;
        } else {
            idx = label.excited ? m : m + 1;
            delta = label.excited ? -1 : +1;
        }
        if (idx == 0) {  // no partner: Omega_0 = 0
            out.accumulate(label, amp);
            continue;
        }
        const double theta = block_rabi(cfg, membrane, idx) * duration;
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        out.accumulate(label, amp * c);
        if (s != 0.0) {
            const int m2 = m + delta;
            if (m2 >= psi.cutoff())
                throw cutoff_violation("sideband: transfer from " + to_string(label) +
                                       " would populate the cutoff level");
            BasisLabel partner = label;
            partner.excited = !label.excited;
            partner.occupations[membrane] = m2;
            const Complex ph =
                Complex{0.0, -1.0} * std::polar(1.0, label.excited ? +phase : -phase) * s;
            out.accumulate(partner, amp * ph);
        }
    }
    out.prune();
    return out;
}

}  // namespace detail

inline StateVector apply_red(const StateVector& psi, int membrane, double phase,
                             double duration, const DriveConfig& cfg) {
    return detail::apply_sideband(psi, membrane, phase, duration, cfg, false);
}

inline StateVector apply_blue(const StateVector& psi, int membrane, double phase,
                              double duration, const DriveConfig& cfg) {
    return detail::apply_sideband(psi, membrane, phase, duration, cfg, true);
}

inline StateVector apply_pulse(const StateVector& psi, const Pulse& p, const DriveConfig& cfg) {
    switch (p.kind) {
        case PulseKind::Carrier: return apply_carrier(psi, p.phase, p.duration, cfg);
        case PulseKind::Red: return apply_red(psi, p.membrane, p.phase, p.duration, cfg);
        case PulseKind::Blue: return apply_blue(psi, p.membrane, p.phase, p.duration, cfg);
    }
    throw std::invalid_argument("apply_pulse: unknown kind");
}

// ---------------------------------------------------------------------------
// Parameter validation against the working-regime inequalities.

enum class Model { LD, BLD };

inline std::string to_string(Model m) { return m == Model::LD ? "ld" : "bld"; }

struct ConditionCheck {
    std::string id;
    std::string description;
    bool pass = false;
    double margin = 0.0;  // achieved ratio / threshold; >= 1 passes
};

struct ValidationReport {
    std::vector<ConditionCheck> checks;
    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
    }
};

namespace detail {

inline double safe_ratio(double num, double den) {
    if (den <= 0.0)
        return std::numeric_limits<double>::infinity();
    return num / den;
}

}  // namespace detail

// Report-only check of: (i) resolved sideband omega_i > gamma_c;
// (ii) g_i >> gamma_c, gamma_m_i; (iii) sum 2 g_i^2/omega_i >> Omega;
// (iv) LD: |omega_i - omega_j| >> Omega, BLD: either frequency-chain
// ordering. ">>" means ratio >= threshold.
inline ValidationReport validate_params(const DriveConfig& cfg, Model model,
                                        double threshold = 10.0) {
    ValidationReport rep;
    const int n = cfg.n_modes();

    {
        double margin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i)
            margin = std::min(margin, detail::safe_ratio(cfg.omega_m[i], cfg.gamma_c));
        rep.checks.push_back({"resolved-sideband", "omega_i > gamma_c", margin > 1.0, margin});
    }
    {
        double margin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            margin = std::min(margin, detail::safe_ratio(cfg.g(i), threshold * cfg.gamma_c));
            margin = std::min(margin, detail::safe_ratio(cfg.g(i), threshold * cfg.gamma_m[i]));
        }
        rep.checks.push_back(
            {"strong-coupling", "g_i >> gamma_c, gamma_m_i", margin >= 1.0, margin});
    }
    {
        double anharm = 0.0;
        for (int i = 0; i < n; ++i)
            anharm += 2.0 * cfg.g(i) * cfg.g(i) / cfg.omega_m[i];
        const double margin = detail::safe_ratio(anharm, threshold * cfg.omega_rabi);
        rep.checks.push_back(
            {"photon-blockade", "sum 2 g_i^2/omega_i >> Omega", margin >= 1.0, margin});
    }
    if (model == Model::LD) {
        double margin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                margin = std::min(margin, detail::safe_ratio(std::abs(cfg.omega_m[i] - cfg.omega_m[j]),
                                                             threshold * cfg.omega_rabi));
        rep.checks.push_back(
            {"mode-separation", "|omega_i - omega_j| >> Omega", margin >= 1.0, margin});
    } else {
        // Either |w_i-w_j| >> min(w) >> Omega >> gammas
        // or min(w) >> |w_i-w_j| >> Omega >> gammas, per membrane pair.
        double margin = std::numeric_limits<double>::infinity();
        double gmax = cfg.gamma_c;
        for (double g : cfg.gamma_m)
            gmax = std::max(gmax, g);
        const double drive_over_decay = detail::safe_ratio(cfg.omega_rabi, threshold * gmax);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const double diff = std::abs(cfg.omega_m[i] - cfg.omega_m[j]);
                const double wmin = std::min(cfg.omega_m[i], cfg.omega_m[j]);
                const double chain_a =
                    std::min({detail::safe_ratio(diff, threshold * wmin),
                              detail::safe_ratio(wmin, threshold * cfg.omega_rabi), drive_over_decay});
                const double chain_b =
                    std::min({detail::safe_ratio(wmin, threshold * diff),
                              detail::safe_ratio(diff, threshold * cfg.omega_rabi), drive_over_decay});
                margin = std::min(margin, std::max(chain_a, chain_b));
            }
        }
        if (n == 1)
            margin = drive_over_decay;
        rep.checks.push_back({"mode-separation", "frequency-chain ordering per membrane pair",
                              margin >= 1.0, margin});
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Full-model integrator: propagates the interaction-picture Hamiltonian of
// the two-level system with the exponential drive expanded to a configurable
// order per membrane (j_i + k_i <= max_order), without the per-pulse
// rotating-wave reduction. Serves as the validation oracle for the closed
// forms above.
//
// Phase convention: a pulse's drive phase phi_d relates to the closed-form
// phases by phi_c = phi_d, phi_b = phi_d, phi_r = phi_d + pi (the red line's
// minus sign is the one the closed form absorbs into its phase).

struct IntegratorOptions {
    double tol = 1e-6;   // target global amplitude error
    int max_order = 4;   // j_i + k_i truncation per membrane
};

inline double drive_phase_for(const Pulse& p) {
    return p.kind == PulseKind::Red ? p.phase - std::numbers::pi : p.phase;
}

namespace detail {

struct DenseBasis {
    int n_modes, cutoff, dim;
    explicit DenseBasis(int n, int c) : n_modes(n), cutoff(c) {
        dim = 2;
        for (int i = 0; i < n; ++i)
            dim *= c;
    }
    int index(const BasisLabel& l) const {
        int idx = l.excited ? 1 : 0;
        for (int i = 0; i < n_modes; ++i)
            idx = idx * cutoff + l.occupations[i];
        return idx;
    }
    BasisLabel label(int idx) const {
        BasisLabel l;
        l.occupations.assign(n_modes, 0);
        for (int i = n_modes - 1; i >= 0; --i) {
            l.occupations[i] = idx % cutoff;
            idx /= cutoff;
        }
        l.excited = idx != 0;
        return l;
    }
};

// <m'| b†^j b^k |m> for m' = m - k + j.
inline double ladder_element(int m, int j, int k) {
    if (m - k < 0)
        return 0.0;
    double amp = 1.0;
    for (int t = 0; t < k; ++t)
        amp *= std::sqrt(static_cast<double>(m - t));
    for (int t = 0; t < j; ++t)
        amp *= std::sqrt(static_cast<double>(m - k + 1 + t));
    return amp;
}

struct DriveTerm {
    int row, col;      // <e,row| V |g,col> within the phonon part
    double weight;     // product of membrane matrix elements
    double freq;       // sum (m'_i - m_i) omega_i
};

}  // namespace detail

inline StateVector integrate_two_level(const StateVector& psi0, const std::vector<Pulse>& schedule,
                                       const DriveConfig& cfg,
                                       const IntegratorOptions& opt = {}) {
    const int n = psi0.n_modes();
    const int cutoff = psi0.cutoff();
    if (n != cfg.n_modes())
        throw dimension_mismatch("integrate_two_level: state/config mode count mismatch");

    const detail::DenseBasis basis(n, cutoff);
    const int phdim = basis.dim / 2;

    // Per-membrane expansion matrix T_i[m'][m], truncated at j+k <= max_order.
    std::vector<std::vector<double>> T(n, std::vector<double>(cutoff * cutoff, 0.0));
    for (int i = 0; i < n; ++i) {
        const double eta = cfg.eta[i];
        const double pref = std::exp(-0.5 * eta * eta);
        double jfact = 1.0;
        for (int j = 0; j <= opt.max_order; ++j) {
            if (j > 0)
                jfact *= j;
            double kfact = 1.0;
            for (int k = 0; j + k <= opt.max_order; ++k) {
                if (k > 0)
                    kfact *= k;
                const double coef =
                    ((k % 2) ? -1.0 : 1.0) * std::pow(eta, j + k) / (jfact * kfact);
                for (int m = 0; m < cutoff; ++m) {
                    const int mp = m - k + j;
                    if (mp < 0 || mp >= cutoff)
                        continue;
                    T[i][mp * cutoff + m] += pref * coef * detail::ladder_element(m, j, k);
                }
            }
        }
    }

    // Full coupling <e,M'|V|g,M> = Omega e^{-i(dd t + phi)} prod_i T_i[m'_i][m_i],
    // oscillating at freq = sum (m'_i - m_i) omega_i - dd.
    std::vector<detail::DriveTerm> terms;
    std::vector<int> occ(n), occp(n);
    for (int col = 0; col < phdim; ++col) {
        int tmp = col;
        for (int i = n - 1; i >= 0; --i) {
            occ[i] = tmp % cutoff;
            tmp /= cutoff;
        }
        for (int row = 0; row < phdim; ++row) {
            int t2 = row;
            for (int i = n - 1; i >= 0; --i) {
                occp[i] = t2 % cutoff;
                t2 /= cutoff;
            }
            double w = 1.0, freq = 0.0;
            for (int i = 0; i < n; ++i) {
                w *= T[i][occp[i] * cutoff + occ[i]];
                freq += (occp[i] - occ[i]) * cfg.omega_m[i];
            }
            if (w != 0.0)
                terms.push_back({row, col, w, freq});
        }
    }

    double freq_max = 0.0;
    for (const auto& t : terms)
        freq_max = std::max(freq_max, std::abs(t.freq));
    double wm_max = 0.0;
    for (double w : cfg.omega_m)
        wm_max = std::max(wm_max, w);
    const double omega_max = freq_max + wm_max;  // detuning adds at most one omega_m

    std::vector<Complex> psi(basis.dim, Complex{});
    for (const auto& [l, a] : psi0.amplitudes())
        psi[basis.index(l)] = a;

    double total_t = 0.0;
    for (const auto& p : schedule)
        total_t += p.duration;

    // dt so the accumulated RK4 error ~ T * Omega * (omega_max dt)^4 stays at tol.
    const double err_scale =
        std::max(total_t * std::abs(cfg.omega_rabi) * std::pow(omega_max, 4.0), 1e-300);
    double dt = std::pow(opt.tol / err_scale, 0.25);
    dt = std::min(dt, 0.1 / std::max(omega_max, 1e-300));
    if (!(dt > 0.0) || dt < 1e-12 * total_t)
        throw numeric_failure("integrate_two_level: step size underflow");

    std::vector<Complex> k1(basis.dim), k2(basis.dim), k3(basis.dim), k4(basis.dim),
        tmpv(basis.dim);

    double t_abs = 0.0;
    for (const auto& pulse : schedule) {
        const double dd = implied_detuning(pulse, cfg);
        const double phi = drive_phase_for(pulse);
        const double T_pulse = pulse.duration;
        if (T_pulse == 0.0)
            continue;
        const long steps = std::max<long>(1, static_cast<long>(std::ceil(T_pulse / dt)));
        const double h = T_pulse / steps;

        auto deriv = [&](double t, const std::vector<Complex>& in, std::vector<Complex>& out) {
            std::fill(out.begin(), out.end(), Complex{});
            const Complex drive = cfg.omega_rabi * std::polar(1.0, -(dd * t + phi));
            for (const auto& term : terms) {
                const Complex v = drive * term.weight * std::polar(1.0, term.freq * t);
                // d/dt |e,row> += -i v <g,col| ; conjugate leg on |g,col>
                out[phdim + term.row] += Complex{0.0, -1.0} * v * in[term.col];
                out[term.col] += Complex{0.0, -1.0} * std::conj(v) * in[phdim + term.row];
            }
        };

        for (long s = 0; s < steps; ++s) {
            const double t = t_abs + s * h;
            deriv(t, psi, k1);
            for (int i = 0; i < basis.dim; ++i)
                tmpv[i] = psi[i] + 0.5 * h * k1[i];
            deriv(t + 0.5 * h, tmpv, k2);
            for (int i = 0; i < basis.dim; ++i)
                tmpv[i] = psi[i] + 0.5 * h * k2[i];
            deriv(t + 0.5 * h, tmpv, k3);
            for (int i = 0; i < basis.dim; ++i)
                tmpv[i] = psi[i] + h * k3[i];
            deriv(t + h, tmpv, k4);
            for (int i = 0; i < basis.dim; ++i)
                psi[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        t_abs += T_pulse;
    }

    StateVector out(n, cutoff);
    for (int i = 0; i < basis.dim; ++i)
        if (std::abs(psi[i]) >= kPruneEps)
            out.set_amplitude(basis.label(i), psi[i]);
    return out;
}

}  // namespace optomech
