#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "optomech/mode_solver.hpp"

using namespace optomech;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double kPi = std::numbers::pi;

// Closed-form x12 for one membrane: (C10 + zeta C11)/k with
// C10 = sin k(q2-q0), C11 = sin k(q1-q2) sin k(q1-q0).
double residual_n1(double k, double q0, double q1, double q2, double zeta) {
    const double c10 = std::sin(k * (q2 - q0));
    const double c11 = std::sin(k * (q1 - q2)) * std::sin(k * (q1 - q0));
    return (c10 + zeta * c11) / k;
}

// Closed-form x12 for two membranes.
double residual_n2(double k, double q0, double q1, double q2, double q3, double zeta) {
    const double c20 = std::sin(k * (q3 - q0));
    const double c21 = std::sin(k * (q1 - q0)) * std::sin(k * (q1 - q3)) +
                       std::sin(k * (q2 - q0)) * std::sin(k * (q2 - q3));
    const double c22 = std::sin(k * (q1 - q0)) * std::sin(k * (q2 - q1)) *
                       std::sin(k * (q3 - q2));
    return (c20 + zeta * c21 + zeta * zeta * c22) / k;
}

}  // namespace

TEST_CASE("system matrix structure", "[modes]") {
    SECTION("empty cavity reduces to a single propagation") {
        const auto geom = CavityGeometry::make(0.0, 1.7, {}, 0.5);
        const double k = 3.3;
        const Matrix2 sys = system_matrix(geom, k);
        const Matrix2 prop = propagation_matrix(k, 1.7);
        CHECK(sys.x11 == prop.x11);
        CHECK(sys.x12 == prop.x12);
        CHECK(sys.x21 == prop.x21);
        CHECK(sys.x22 == prop.x22);
    }
    SECTION("determinant one at random k") {
        const auto geom = CavityGeometry::make(0.0, 3.0, {0.9, 1.8}, 0.7);
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> uni(0.5, 40.0);
        for (int i = 0; i < 100; ++i)
            CHECK_THAT(system_matrix(geom, uni(rng)).determinant(), WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("mode residual against closed forms", "[modes]") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> uni(0.5, 40.0);
    SECTION("N = 1") {
        const auto geom = CavityGeometry::make(0.0, 2.0, {0.7}, 0.7);
        for (int i = 0; i < 50; ++i) {
            const double k = uni(rng);
            const double lhs = mode_residual(geom, k);
            const double rhs = residual_n1(k, 0.0, 0.7, 2.0, geom.zeta);
            CHECK_THAT(lhs - rhs, WithinAbs(0.0, 1e-10 * (std::abs(lhs) + std::abs(rhs) + 1.0)));
        }
    }
    SECTION("N = 2") {
        const auto geom = CavityGeometry::make(0.0, 3.0, {0.9, 1.8}, 0.7);
        for (int i = 0; i < 50; ++i) {
            const double k = uni(rng);
            const double lhs = mode_residual(geom, k);
            const double rhs = residual_n2(k, 0.0, 0.9, 1.8, 3.0, geom.zeta);
            CHECK_THAT(lhs - rhs, WithinAbs(0.0, 1e-10 * (std::abs(lhs) + std::abs(rhs) + 1.0)));
        }
    }
    SECTION("empty cavity zeros at n pi / L") {
        const auto geom = CavityGeometry::make(0.0, 1.0, {}, 0.0);
        for (int n = 1; n <= 12; ++n)
            CHECK_THAT(mode_residual(geom, n * kPi), WithinAbs(0.0, 1e-12));
    }
    SECTION("sign change across empty-cavity roots at R = 0") {
        const auto geom = CavityGeometry::make(0.0, 1.0, {0.4}, 0.0);
        for (int n = 1; n <= 8; ++n) {
            const double lo = mode_residual(geom, n * kPi - 0.1);
            const double hi = mode_residual(geom, n * kPi + 0.1);
            CHECK(lo * hi < 0.0);
        }
    }
}

TEST_CASE("find_modes", "[modes]") {
    SECTION("R = 0 spectrum is n pi / L for any membrane positions") {
        const auto geom = CavityGeometry::make(0.0, 1.0, {0.31, 0.62}, 0.0);
        const auto spec = find_modes(geom, 0.5, 20.5 * kPi / 1.0);
        REQUIRE(spec.size() == 20);
        for (std::size_t i = 0; i < spec.size(); ++i)
            CHECK_THAT(spec.roots[i] / ((i + 1) * kPi), WithinAbs(1.0, 1e-9));
    }
    SECTION("membrane at midpoint pairs modes toward degeneracy") {
        const auto geom = CavityGeometry::make(0.0, 2.0, {1.0}, 0.7);
        const auto spec = find_modes(geom, 0.3, 6.2 * kPi);
        // Empty-cavity spacing would be pi/2; with the membrane the roots come
        // in close pairs separated by wide gaps.
        REQUIRE(spec.size() >= 8);
        for (std::size_t i = 0; i + 2 < spec.size(); i += 2) {
            const double inner = spec.roots[i + 1] - spec.roots[i];
            const double outer = spec.roots[i + 2] - spec.roots[i + 1];
            CHECK(inner < outer);
            CHECK(inner < kPi / 2.0);
        }
    }
    SECTION("no roots found is an empty spectrum") {
        const auto geom = CavityGeometry::make(0.0, 1.0, {}, 0.0);
        const auto spec = find_modes(geom, 0.5, 2.0);  // first root at pi ~ 3.14
        CHECK(spec.size() == 0);
    }
    SECTION("stored residuals are small") {
        const auto geom = CavityGeometry::make(0.0, 3.0, {0.9, 1.9}, 0.7);
        const auto spec = find_modes(geom, 0.5, 12.0);
        REQUIRE(spec.size() > 0);
        for (std::size_t i = 0; i < spec.size(); ++i)
            CHECK(spec.residuals[i] < 1e-9);
    }
}

TEST_CASE("fig2-style periodicity of the tracked branch", "[modes]") {
    // Equal thirds, R = 0.7. Moving one membrane by the mode wavelength
    // lambda_n = 2L/n returns the tracked frequency exactly.
    const double L = 1.0;
    const auto geom = CavityGeometry::make(0.0, 3.0 * L, {1.0, 2.0}, 0.7);
    const int n = 1000;
    const double kn = n * kPi / L;
    const double lambda = 2.0 * L / n;
    const double window = kPi / (2.0 * L);

    const double k_rest = track_root(geom, kn, window);
    CHECK_THAT(k_rest, WithinAbs(kn, 1e-12 * kn));

    const double k_shift = track_root(geom.displaced(0, lambda), kn, window);
    CHECK_THAT(k_shift - k_rest, WithinAbs(0.0, 1e-12 * kn));

    // A generic displacement changes the frequency, and one full period away
    // from a generic start the branch returns to within a few parts in 1e12
    // (exact only in the large-n limit).
    const double d = 0.23 * lambda;
    double k_a = k_rest;
    CavityGeometry ga = geom;
    // walk the branch in small steps so tracking never jumps
    const int steps = 40;
    for (int s = 1; s <= steps; ++s) {
        ga = geom.displaced(0, d * s / steps);
        k_a = track_root(ga, k_a, window);
    }
    CHECK(std::abs(k_a - k_rest) > 1e-6 * kn);  // generic point is genuinely shifted
    double k_b = k_a;
    for (int s = 1; s <= steps; ++s) {
        const auto gb = geom.displaced(0, d + lambda * s / steps);
        k_b = track_root(gb, k_b, window);
    }
    CHECK_THAT(k_b - k_a, WithinAbs(0.0, 1e-11 * kn));
}

TEST_CASE("coupling coefficients", "[modes]") {
    SECTION("R = 0 gives vanishing first-order couplings") {
        const auto geom = CavityGeometry::make(0.0, 2.0, {0.8}, 0.0);
        const auto spec = find_modes(geom, 0.5, 10.0);
        REQUIRE(spec.size() > 0);
        const auto cs = coupling_coefficients(geom, spec, 1);
        CHECK_THAT(cs.g1[0], WithinAbs(0.0, 1e-8));
    }
    SECTION("halving h changes g1 by O(h^2)") {
        const auto geom = CavityGeometry::make(0.0, 2.0, {0.8}, 0.7);
        const auto spec = find_modes(geom, 0.5, 10.0);
        REQUIRE(spec.size() >= 2);
        const std::size_t idx = 1;
        const double lambda = 2.0 * kPi / spec.roots[idx];
        const double h = 2e-4 * lambda;
        const double g_h = coupling_coefficients(geom, spec, idx, h).g1[0];
        const double g_h2 = coupling_coefficients(geom, spec, idx, h / 2.0).g1[0];
        const double g_h4 = coupling_coefficients(geom, spec, idx, h / 4.0).g1[0];
        const double d1 = std::abs(g_h - g_h2);
        const double d2 = std::abs(g_h2 - g_h4);
        REQUIRE(d2 > 0.0);
        CHECK(d1 / d2 > 2.0);  // ~4 for a clean quadratic
        CHECK(d1 / d2 < 8.0);
    }
    SECTION("g2 symmetric for two membranes") {
        const auto geom = CavityGeometry::make(0.0, 3.0, {0.9, 1.9}, 0.5);
        const auto spec = find_modes(geom, 0.5, 10.0);
        REQUIRE(spec.size() >= 1);
        const auto cs = coupling_coefficients(geom, spec, 0);
        const double scale = std::abs(cs.g2[0][1]) + std::abs(cs.g2[1][0]) + 1e-30;
        CHECK(std::abs(cs.g2[0][1] - cs.g2[1][0]) / scale < 1e-9);
    }
    SECTION("membrane at a field node: |g1| locally extremal (zero)") {
        // Cavity [0,2], mode k = n pi (node spacing 1/n); membrane at a node.
        const double q_node = 1.0;  // node of every k = n pi mode
        for (double offset : {-0.05, 0.0, 0.05}) {
            const auto geom = CavityGeometry::make(0.0, 2.0, {q_node + offset}, 0.7);
            const double k0 = track_root(geom, 2.0 * kPi, kPi / 4.0);
            ModeSpectrum spec;
            spec.roots = {k0};
            spec.residuals = {0.0};
            spec.scan_step = kPi / 40.0;
            const auto cs = coupling_coefficients(geom, spec, 0);
            if (offset == 0.0)
                CHECK_THAT(cs.g1[0], WithinAbs(0.0, 1e-6));
            else
                CHECK(std::abs(cs.g1[0]) > 1e-2);
        }
    }
    SECTION("lost bracket raises tracking-failure") {
        const auto geom = CavityGeometry::make(0.0, 2.0, {0.8}, 0.7);
        CHECK_THROWS_AS(track_root(geom, 1e-3, 1e-6), tracking_failure);
    }
}
