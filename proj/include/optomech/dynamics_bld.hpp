#pragma once

#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "optomech/drive.hpp"
#include "optomech/errors.hpp"
#include "optomech/hilbert.hpp"

namespace optomech {

// Associated Laguerre polynomial L_m^alpha(x) by the three-term recurrence.
inline double laguerre(int m, int alpha, double x) {
    if (m < 0 || alpha < 0)
        throw std::invalid_argument("laguerre: need m, alpha >= 0");
    if (m == 0)
        return 1.0;
    double lkm1 = 1.0;
    double lk = 1.0 + alpha - x;
    for (int k = 1; k < m; ++k) {
        const double lkp1 = ((2.0 * k + 1.0 + alpha - x) * lk - (k + alpha) * lkm1) / (k + 1.0);
        lkm1 = lk;
        lk = lkp1;
    }
    return lk;
}

// Sideband weight xi_m^n(eta): the displacement matrix element that scales
// the n-phonon transition out of Fock level m. Zero when the transition
// would need more phonons than are present (m + n < 0, or m < 0).
inline double xi(int m, int n, double eta) {
    if (m < 0 || m + n < 0)
        return 0.0;
    if (n < 0)
        return ((-n) % 2 ? -1.0 : 1.0) * xi(m + n, -n, eta);
    if (eta == 0.0)
        return n == 0 ? 1.0 : 0.0;
    const double log_ratio = 0.5 * (std::lgamma(m + 1.0) - std::lgamma(m + n + 1.0));
    return std::exp(-0.5 * eta * eta + n * std::log(eta) + log_ratio) *
           laguerre(m, n, eta * eta);
}

// Precomputed xi grid for one membrane; read-only after construction.
class XiTable {
  public:
    XiTable(double eta, int max_m, int max_abs_n)
        : eta_(eta), max_m_(max_m), max_abs_n_(max_abs_n),
          values_((max_m + 1) * (2 * max_abs_n + 1), 0.0) {
        for (int m = 0; m <= max_m; ++m)
            for (int n = -max_abs_n; n <= max_abs_n; ++n)
                values_[slot(m, n)] = xi(m, n, eta);
    }

    double eta() const { return eta_; }
    int max_m() const { return max_m_; }
    int max_abs_n() const { return max_abs_n_; }

    double operator()(int m, int n) const {
        if (m < 0 || m + n < 0)
            return 0.0;
        if (m > max_m_ || std::abs(n) > max_abs_n_)
            return xi(m, n, eta_);  // recompute on miss
        return values_[slot(m, n)];
    }

  private:
    std::size_t slot(int m, int n) const {
        return static_cast<std::size_t>(m) * (2 * max_abs_n_ + 1) + (n + max_abs_n_);
    }
    double eta_;
    int max_m_, max_abs_n_;
    std::vector<double> values_;
};

// A single multi-phonon drive segment. orders[i] = n_i: positive orders
// annihilate phonons on the g -> e leg, negative orders create them
// (blue-type), zero leaves the mode untouched. The drive detuning is pinned
// to Delta_d = -sum n_i omega_i.
struct MultiSidebandPulse {
    std::vector<int> orders;
    double phase = 0.0;
    double duration = 0.0;
};

inline double implied_detuning(const MultiSidebandPulse& p, const DriveConfig& cfg) {
    double dd = 0.0;
    for (std::size_t i = 0; i < p.orders.size(); ++i)
        dd -= p.orders[i] * cfg.omega_m.at(i);
    return dd;
}

// Omega * prod_i xi_{m_i}^{n_i}(eta_i); zero if any factor vanishes.
inline double effective_rabi(const std::vector<int>& occupations, const std::vector<int>& orders,
                             const DriveConfig& cfg) {
    if (occupations.size() != orders.size() ||
        static_cast<int>(orders.size()) != cfg.n_modes())
        throw dimension_mismatch("effective_rabi: occupations/orders/config size mismatch");
    double r = cfg.omega_rabi;
    for (std::size_t i = 0; i < orders.size(); ++i)
        r *= xi(occupations[i], orders[i], cfg.eta[i]);
    return r;
}

namespace detail {

// Resonance-separation guard: another order vector within the searched box
// whose implied detuning is within Omega of this pulse's resonance makes the
// single-transition treatment invalid.
inline void check_resonance_separation(const MultiSidebandPulse& p, const DriveConfig& cfg) {
    const int n = static_cast<int>(p.orders.size());
    int bound = 1;
    for (int v : p.orders)
        bound = std::max(bound, std::abs(v) + 1);
    const double dd = implied_detuning(p, cfg);

    std::vector<int> probe(n, -bound);
    while (true) {
        if (probe != p.orders) {
            double d2 = 0.0;
            for (int i = 0; i < n; ++i)
                d2 -= probe[i] * cfg.omega_m[i];
            if (std::abs(d2 - dd) < std::abs(cfg.omega_rabi)) {
                std::string o;
                for (int v : probe)
                    o += std::to_string(v) + " ";
                throw std::invalid_argument(
                    "multisideband pulse resonance collides with order vector ( " + o +
                    ") within Omega");
            }
        }
        int i = n - 1;
        while (i >= 0 && probe[i] == bound) {
            probe[i] = -bound;
            --i;
        }
        if (i < 0)
            break;
        ++probe[i];
    }
}

}  // namespace detail

// Block rotation |g,{m}> <-> |e,{m-n}> with the printed coefficient forms:
// C = -i e^{-i phi} (-1)^{sum n} sin(Omega_eff t) on the g -> e leg and
// Ctilde = -C* on the e -> g leg; the diagonal carries the positive root
// sqrt(1-|C|^2). Labels whose partner has a negative occupation are left
// invariant (their effective Rabi frequency vanishes).
inline StateVector apply_multisideband(const StateVector& psi, const MultiSidebandPulse& pulse,
                                       const DriveConfig& cfg) {
    const int n = psi.n_modes();
    if (static_cast<int>(pulse.orders.size()) != n || cfg.n_modes() != n)
        throw dimension_mismatch("apply_multisideband: orders/config/state size mismatch");
    detail::check_resonance_separation(pulse, cfg);

    int order_sum = std::accumulate(pulse.orders.begin(), pulse.orders.end(), 0);
    const double parity = (std::abs(order_sum) % 2) ? -1.0 : 1.0;

    StateVector out(n, psi.cutoff());
    std::vector<int> partner_occ(n);
    for (const auto& [label, amp] : psi.amplitudes()) {
        bool partner_ok = true;
        for (int i = 0; i < n; ++i) {
            partner_occ[i] = label.occupations[i] + (label.excited ? +pulse.orders[i]
                                                                   : -pulse.orders[i]);
            if (partner_occ[i] < 0)
                partner_ok = false;
        }
        // Rabi index: the g-side occupations of the block, i.e. {m-n} for a
        // g label and {m} for an e label.
        double rabi = 0.0;
        if (partner_ok)
            rabi = effective_rabi(label.excited ? label.occupations : partner_occ, pulse.orders,
                                  cfg);
        if (!partner_ok || rabi == 0.0) {
            out.accumulate(label, amp);
            continue;
        }
        const double s = std::sin(rabi * pulse.duration);
        const double c = std::sqrt(std::max(0.0, 1.0 - s * s));
        out.accumulate(label, amp * c);
        if (s != 0.0) {
            for (int i = 0; i < n; ++i)
                if (partner_occ[i] >= psi.cutoff())
                    throw cutoff_violation("apply_multisideband: transfer from " +
                                           to_string(label) + " would populate the cutoff level");
            BasisLabel partner{!label.excited, partner_occ};
            // C on g -> e; -C* on e -> g.
            const Complex cc = Complex{0.0, -1.0} * std::polar(1.0, -pulse.phase) * parity * s;
            out.accumulate(partner, amp * (label.excited ? -std::conj(cc) : cc));
        }
    }
    out.prune();
    return out;
}

}  // namespace optomech
