#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "optomech/errors.hpp"

namespace optomech {

// Classification of a Rabi-frequency ratio sqrt(n/m) and, when irrational,
// the machinery to pick a pulse duration that drives both block rotations to
// |sin| as close to 1 as the integer arithmetic allows.

enum class RatioVariant { rational_both_odd, rational_one_even, irrational };

inline std::string to_string(RatioVariant v) {
    switch (v) {
        case RatioVariant::rational_both_odd: return "rational_both_odd";
        case RatioVariant::rational_one_even: return "rational_one_even";
        case RatioVariant::irrational: return "irrational";
    }
    return "?";
}

struct RatioClass {
    RatioVariant variant;
    std::int64_t n_reduced = 0;  // n' (rational only)
    std::int64_t m_reduced = 0;  // m'
    std::vector<std::pair<std::int64_t, std::int64_t>> approximants;  // CF convergents
};

namespace detail {

inline std::int64_t isqrt64(std::int64_t v) {
    if (v < 0)
        return -1;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r * r > v)
        --r;
    while ((r + 1) * (r + 1) <= v)
        ++r;
    return r;
}

// Continued-fraction terms of sqrt(n/m) = (0 + sqrt(nm)) / m via the exact
// surd recurrence; the expansion is periodic so any count is available.
inline std::vector<std::int64_t> surd_cf_terms(std::int64_t n, std::int64_t m, int count) {
    const std::int64_t D = n * m;
    const std::int64_t s = isqrt64(D);
    std::vector<std::int64_t> terms;
    std::int64_t P = 0, Q = m;
    for (int i = 0; i < count; ++i) {
        const std::int64_t a = (P + s) / Q;
        terms.push_back(a);
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }
    return terms;
}

}  // namespace detail

inline RatioClass classify_ratio(std::int64_t n, std::int64_t m) {
    if (!(n >= m && m >= 1))
        throw std::invalid_argument("classify_ratio: need n >= m >= 1");
    const std::int64_t g = std::gcd(n, m);
    const std::int64_t a = n / g, b = m / g;
    const std::int64_t ra = detail::isqrt64(a), rb = detail::isqrt64(b);
    RatioClass rc;
    if (ra * ra == a && rb * rb == b) {
        rc.n_reduced = ra;
        rc.m_reduced = rb;
        rc.variant = (ra % 2 == 1 && rb % 2 == 1) ? RatioVariant::rational_both_odd
                                                  : RatioVariant::rational_one_even;
        return rc;
    }
    rc.variant = RatioVariant::irrational;
    const auto terms = detail::surd_cf_terms(n, m, 24);
    std::int64_t h2 = 1, h1 = terms[0], k2 = 0, k1 = 1;
    rc.approximants.push_back({h1, k1});
    for (std::size_t i = 1; i < terms.size(); ++i) {
        // overflow guard: convergents grow geometrically
        if (h1 > (std::numeric_limits<std::int64_t>::max() - h2) / (terms[i] + 1))
            break;
        const std::int64_t h = terms[i] * h1 + h2;
        const std::int64_t k = terms[i] * k1 + k2;
        rc.approximants.push_back({h, k});
        h2 = h1; h1 = h;
        k2 = k1; k1 = k;
    }
    return rc;
}

// alpha(p) = |sin(m' p pi / (n' +- m'))|, reduced with integer arithmetic so
// the periodicity in p is exact. branch = +1 or -1. The degenerate n' = m'
// minus branch falls back to the plus branch.
inline double alpha_for(std::int64_t n_red, std::int64_t m_red, std::int64_t p, int branch) {
    if (!(n_red >= 1 && m_red >= 1 && p >= 1))
        throw std::invalid_argument("alpha_for: need positive n', m', p");
    std::int64_t D = branch >= 0 ? n_red + m_red : n_red - m_red;
    if (D == 0)
        D = n_red + m_red;
    const std::int64_t r = (m_red % D) * (p % D) % D;
    return std::abs(std::sin(std::numbers::pi * static_cast<double>(r) / static_cast<double>(D)));
}

// Best achievable |sin| over both branches and one full period of p.
inline double alpha_max(std::int64_t n_red, std::int64_t m_red) {
    double best = 0.0;
    for (int branch : {+1, -1}) {
        const std::int64_t D = branch > 0 ? n_red + m_red : n_red - m_red;
        if (D <= 0)
            continue;
        for (std::int64_t p = 1; p <= D; ++p)
            best = std::max(best, alpha_for(n_red, m_red, p, branch));
    }
    return best;
}

// Odd/odd best approximations of sqrt(n/m), from the semiconvergent stream
// filtered to strictly improving error. The integer-part convergent is used
// only as the error baseline, never emitted.
inline std::vector<std::pair<std::int64_t, std::int64_t>> odd_odd_approximants(
    std::int64_t n, std::int64_t m, int depth, int max_cf_terms = 96) {
    const double x = std::sqrt(static_cast<double>(n) / static_cast<double>(m));
    const auto terms = detail::surd_cf_terms(n, m, max_cf_terms);
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    std::int64_t h2 = 1, h1 = terms[0], k2 = 0, k1 = 1;
    double best_err = std::abs(x - static_cast<double>(h1));
    for (std::size_t i = 1; i < terms.size() && static_cast<int>(out.size()) < depth; ++i) {
        if (h1 > (std::numeric_limits<std::int64_t>::max() - h2) / (terms[i] + 1))
            break;
        for (std::int64_t j = 1; j <= terms[i]; ++j) {
            const std::int64_t h = j * h1 + h2;
            const std::int64_t k = j * k1 + k2;
            const double err = std::abs(x - static_cast<double>(h) / static_cast<double>(k));
            if (h % 2 == 1 && k % 2 == 1 && err < best_err) {
                best_err = err;
                out.push_back({h, k});
                if (static_cast<int>(out.size()) >= depth)
                    break;
            }
        }
        const std::int64_t h = terms[i] * h1 + h2;
        const std::int64_t k = terms[i] * k1 + k2;
        h2 = h1; h1 = h;
        k2 = k1; k1 = k;
    }
    return out;
}

// Duration choice for one synchronized pulse pair with Rabi frequencies
// rabi_unit*sqrt(n) and rabi_unit*sqrt(m).
struct SyncSolution {
    double duration = 0.0;
    double alpha_n = 0.0, alpha_m = 0.0;  // |sin| per transition at duration
    int sign_n = +1, sign_m = +1;         // sign of each sine
    RatioVariant variant = RatioVariant::rational_both_odd;
    int branch = +1;                       // +-1 equation branch (one-even case)
    std::int64_t p = 0, q = 0;             // integers of the exact/one-even solve
    std::int64_t approx_n = 0, approx_m = 0;  // odd/odd approximant (irrational case)
    std::int64_t n = 0, m = 0;             // the pair being synchronized
};

namespace detail {

inline void fill_achieved(SyncSolution& sol, double rabi_unit) {
    const double sn = std::sin(rabi_unit * std::sqrt(static_cast<double>(sol.n)) * sol.duration);
    const double sm = std::sin(rabi_unit * std::sqrt(static_cast<double>(sol.m)) * sol.duration);
    sol.alpha_n = std::abs(sn);
    sol.alpha_m = std::abs(sm);
    sol.sign_n = sn >= 0.0 ? +1 : -1;
    sol.sign_m = sm >= 0.0 ? +1 : -1;
}

}  // namespace detail

// Case (i): exact duration with alpha = 1 on both transitions.
// Case (ii): the duration maximizing the common alpha over both branches.
// Case (iii): substitute the best odd/odd approximant within `depth`, then
// solve as case (i) from the m-side (its sine is exactly +-1).
// max_duration < 0 disables the duration cap.
inline SyncSolution best_sync_duration(std::int64_t n, std::int64_t m, int depth,
                                       double rabi_unit, double max_duration = -1.0) {
    if (!(n >= m && m >= 1))
        throw std::invalid_argument("best_sync_duration: need n >= m >= 1");
    if (depth < 1)
        throw std::invalid_argument("best_sync_duration: depth must be >= 1");
    if (!(rabi_unit > 0.0))
        throw std::invalid_argument("best_sync_duration: rabi_unit must be positive");

    const double omega_n = rabi_unit * std::sqrt(static_cast<double>(n));
    const double omega_m = rabi_unit * std::sqrt(static_cast<double>(m));
    const RatioClass rc = classify_ratio(n, m);

    SyncSolution sol;
    sol.variant = rc.variant;
    sol.n = n;
    sol.m = m;

    if (rc.variant == RatioVariant::rational_both_odd) {
        // Omega_m dt = m' pi/2 makes Omega_n dt = n' pi/2 (both odd multiples).
        sol.duration = static_cast<double>(rc.m_reduced) * std::numbers::pi / (2.0 * omega_m);
        sol.p = (rc.n_reduced + rc.m_reduced) / 2;
        sol.q = (rc.m_reduced - 1) / 2;
        if (max_duration >= 0.0 && sol.duration > max_duration)
            throw sync_failure("best_sync_duration: exact solution exceeds the duration cap");
        detail::fill_achieved(sol, rabi_unit);
        return sol;
    }

    if (rc.variant == RatioVariant::rational_one_even) {
        double best_alpha = -1.0, best_dt = std::numeric_limits<double>::infinity();
        for (int branch : {+1, -1}) {
            const std::int64_t D = branch > 0 ? rc.n_reduced + rc.m_reduced
                                              : rc.n_reduced - rc.m_reduced;
            if (D <= 0)
                continue;
            const double omega_sum = branch > 0 ? omega_n + omega_m : omega_n - omega_m;
            for (std::int64_t p = 1; p <= D; ++p) {
                const double a = alpha_for(rc.n_reduced, rc.m_reduced, p, branch);
                const double dt = static_cast<double>(p) * std::numbers::pi / omega_sum;
                if (max_duration >= 0.0 && dt > max_duration)
                    continue;
                if (a > best_alpha + 1e-15 ||
                    (std::abs(a - best_alpha) <= 1e-15 && dt < best_dt)) {
                    best_alpha = a;
                    best_dt = dt;
                    sol.branch = branch;
                    sol.p = p;
                }
            }
        }
        if (best_alpha < 0.0)
            throw sync_failure("best_sync_duration: no candidate under the duration cap");
        sol.duration = best_dt;
        detail::fill_achieved(sol, rabi_unit);
        return sol;
    }

    // Irrational: best-of over the odd/odd approximant stream.
    const auto approx = odd_odd_approximants(n, m, depth);
    if (approx.empty())
        throw sync_failure("best_sync_duration: no odd/odd approximant within depth " +
                           std::to_string(depth));
    bool found = false;
    double best_min_alpha = -1.0;
    SyncSolution best;
    for (const auto& [an, am] : approx) {
        SyncSolution cand = sol;
        cand.approx_n = an;
        cand.approx_m = am;
        cand.duration = static_cast<double>(am) * std::numbers::pi / (2.0 * omega_m);
        if (max_duration >= 0.0 && cand.duration > max_duration)
            continue;
        detail::fill_achieved(cand, rabi_unit);
        const double min_alpha = std::min(cand.alpha_n, cand.alpha_m);
        if (min_alpha > best_min_alpha ||
            (min_alpha == best_min_alpha && cand.duration < best.duration)) {
            best_min_alpha = min_alpha;
            best = cand;
            found = true;
        }
    }
    if (!found)
        throw sync_failure("best_sync_duration: no approximant under the duration cap");
    return best;
}

}  // namespace optomech
