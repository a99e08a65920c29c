#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "optomech/errors.hpp"
#include "optomech/transfer_matrix.hpp"

namespace optomech {

// Fixed mirrors at mirror_left/mirror_right with N membranes in between.
// Lengths are in units of a reference length; c = 1 so omega = k.
struct CavityGeometry {
    double mirror_left = 0.0;
    double mirror_right = 1.0;
    std::vector<double> membranes;  // rest positions, strictly increasing
    double reflectivity = 0.0;      // R in [0, 1)
    double zeta = 0.0;              // 2 sqrt(R/(1-R))

    static CavityGeometry make(double q0, double qn1, std::vector<double> positions, double R) {
        if (!(R >= 0.0 && R < 1.0))
            throw std::invalid_argument("CavityGeometry: reflectivity must be in [0,1)");
        double prev = q0;
        for (double q : positions) {
            if (!(q > prev))
                throw std::invalid_argument("CavityGeometry: positions must be strictly increasing");
            prev = q;
        }
        if (!(qn1 > prev))
            throw std::invalid_argument("CavityGeometry: right mirror must lie past all membranes");
        CavityGeometry g;
        g.mirror_left = q0;
        g.mirror_right = qn1;
        g.membranes = std::move(positions);
        g.reflectivity = R;
        g.zeta = 2.0 * std::sqrt(R / (1.0 - R));
        return g;
    }

    std::size_t n_membranes() const { return membranes.size(); }
    double length() const { return mirror_right - mirror_left; }

    CavityGeometry displaced(std::size_t membrane, double delta) const {
        CavityGeometry g = *this;
        g.membranes.at(membrane) += delta;
        return g;
    }
};

// Ordered product of Eq.-style factors: later segments multiply from the left,
// so the rightmost factor is the first segment q0 -> q1.
inline Matrix2 system_matrix(const CavityGeometry& geom, double k) {
    const std::size_t n = geom.n_membranes();
    Matrix2 x = propagation_matrix(k, (n ? geom.membranes[0] : geom.mirror_right) - geom.mirror_left);
    for (std::size_t i = 0; i < n; ++i) {
        const double next = (i + 1 < n) ? geom.membranes[i + 1] : geom.mirror_right;
        x = propagation_matrix(k, next - geom.membranes[i]) * (membrane_matrix(k, geom.zeta) * x);
    }
    return x;
}

// x12 of the system matrix; zero exactly at intrinsic modes under the
// standing-wave boundary conditions E(q0) = E(qN+1) = 0.
inline double mode_residual(const CavityGeometry& geom, double k) {
    if (!(k > 0.0))
        throw std::invalid_argument("mode_residual: wave vector must be positive");
    return system_matrix(geom, k).x12;
}

struct ModeSpectrum {
    std::vector<double> roots;      // ascending wave vectors
    std::vector<double> residuals;  // |x12| at each stored root
    double scan_step = 0.0;
    double tol_rel = 1e-12;

    std::size_t size() const { return roots.size(); }
    double omega(std::size_t i) const { return roots.at(i); }  // c = 1
};

inline double default_scan_step(const CavityGeometry& geom) {
    return std::numbers::pi / (20.0 * geom.length());
}

namespace detail {

inline double bisect_root(const CavityGeometry& geom, double lo, double hi, double flo, double tol_rel) {
    // flo carries the sign at lo; bisection until the bracket is below tol_rel * k.
    while (hi - lo > tol_rel * 0.5 * (hi + lo)) {
        const double mid = 0.5 * (lo + hi);
        const double fm = mode_residual(geom, mid);
        if (!std::isfinite(fm))
            throw numeric_failure("mode residual is not finite at k = " + std::to_string(mid));
        if (fm == 0.0)
            return mid;
        if ((flo < 0.0) != (fm < 0.0)) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

// Uniform scan over [k_min, k_max] with sign-change bracketing, each bracket
// refined by bisection. The caller picks scan_step small enough to separate
// adjacent roots; default_scan_step(geom) is adequate for near-empty cavities.
inline ModeSpectrum find_modes(const CavityGeometry& geom, double k_min, double k_max,
                               double scan_step = 0.0, double tol_rel = 1e-12) {
    if (!(k_min > 0.0) || !(k_max > k_min))
        throw std::invalid_argument("find_modes: need 0 < k_min < k_max");
    if (scan_step <= 0.0)
        scan_step = default_scan_step(geom);

    ModeSpectrum spec;
    spec.scan_step = scan_step;
    spec.tol_rel = tol_rel;

    double k_prev = k_min;
    double f_prev = mode_residual(geom, k_prev);
    if (!std::isfinite(f_prev))
        throw numeric_failure("mode residual is not finite at k = " + std::to_string(k_prev));

    auto push_root = [&](double root) {
        if (!spec.roots.empty() && root - spec.roots.back() < 0.5 * scan_step)
            return;  // same zero seen from an adjacent bracket
        spec.roots.push_back(root);
        spec.residuals.push_back(std::abs(mode_residual(geom, root)));
    };

    for (double k = k_min + scan_step; k_prev < k_max; k += scan_step) {
        k = std::min(k, k_max);
        const double f = mode_residual(geom, k);
        if (!std::isfinite(f))
            throw numeric_failure("mode residual is not finite at k = " + std::to_string(k));
        if (f_prev == 0.0) {
            push_root(k_prev);
        } else if ((f_prev < 0.0) != (f < 0.0)) {
            push_root(detail::bisect_root(geom, k_prev, k, f_prev, tol_rel));
        }
        if (k >= k_max)
            break;
        k_prev = k;
        f_prev = f;
    }
    return spec;
}

// Re-locate the root nearest to k_guess within +-window. Used to follow one
// mode branch while the geometry changes; failing to find a sign change in
// the window means the branch was lost.
inline double track_root(const CavityGeometry& geom, double k_guess, double window,
                         double tol_rel = 1e-12) {
    const int substeps = 64;
    const double lo = std::max(k_guess - window, 0.25 * window);
    const double hi = k_guess + window;
    const double dk = (hi - lo) / substeps;

    double best = 0.0;
    double best_dist = std::numeric_limits<double>::infinity();
    double k_prev = lo;
    double f_prev = mode_residual(geom, k_prev);
    for (int i = 1; i <= substeps; ++i) {
        const double k = lo + i * dk;
        const double f = mode_residual(geom, k);
        if (!std::isfinite(f))
            throw numeric_failure("mode residual is not finite at k = " + std::to_string(k));
        double root = 0.0;
        bool have = false;
        if (f_prev == 0.0) {
            root = k_prev;
            have = true;
        } else if ((f_prev < 0.0) != (f < 0.0)) {
            root = detail::bisect_root(geom, k_prev, k, f_prev, tol_rel);
            have = true;
        }
        if (have && std::abs(root - k_guess) < best_dist) {
            best = root;
            best_dist = std::abs(root - k_guess);
        }
        k_prev = k;
        f_prev = f;
    }
    if (!std::isfinite(best_dist) || best_dist > window)
        throw tracking_failure("track_root: no root within the tracking window of k = " +
                               std::to_string(k_guess));
    return best;
}

// First- and second-order frequency/displacement coefficients of one mode.
struct CouplingSet {
    std::vector<double> g1;               // d omega / d q_i at rest
    std::vector<std::vector<double>> g2;  // (1/2) d^2 omega / d q_i d q_j
    std::size_t mode_index = 0;
    double fd_step = 0.0;
};

// Central differences of the tracked root under membrane displacement.
// h <= 0 selects the default 1e-6 * lambda of the tracked mode.
inline CouplingSet coupling_coefficients(const CavityGeometry& geom, const ModeSpectrum& spectrum,
                                         std::size_t mode_index, double h = 0.0) {
    const double k0 = spectrum.roots.at(mode_index);
    const double lambda = 2.0 * std::numbers::pi / k0;
    if (h <= 0.0)
        h = 1e-6 * lambda;
    const double window = spectrum.scan_step > 0.0 ? spectrum.scan_step : default_scan_step(geom);

    const std::size_t n = geom.n_membranes();
    auto root_at = [&](std::vector<double> deltas) {
        CavityGeometry g = geom;
        for (std::size_t i = 0; i < n; ++i)
            g.membranes[i] += deltas[i];
        return track_root(g, k0, window, spectrum.tol_rel);
    };

    CouplingSet out;
    out.mode_index = mode_index;
    out.fd_step = h;
    out.g1.resize(n);
    out.g2.assign(n, std::vector<double>(n, 0.0));

    std::vector<double> d(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        d.assign(n, 0.0);
        d[i] = +h;
        const double kp = root_at(d);
        d[i] = -h;
        const double km = root_at(d);
        out.g1[i] = (kp - km) / (2.0 * h);
        out.g2[i][i] = 0.5 * (kp - 2.0 * k0 + km) / (h * h);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j)
                continue;
            d.assign(n, 0.0);
            d[i] = +h; d[j] = +h;
            const double kpp = root_at(d);
            d[i] = +h; d[j] = -h;
            const double kpm = root_at(d);
            d[i] = -h; d[j] = +h;
            const double kmp = root_at(d);
            d[i] = -h; d[j] = -h;
            const double kmm = root_at(d);
            out.g2[i][j] = 0.5 * (kpp - kpm - kmp + kmm) / (4.0 * h * h);
        }
    }
    return out;
}

}  // namespace optomech
