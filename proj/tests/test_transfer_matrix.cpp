#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "optomech/transfer_matrix.hpp"

using namespace optomech;
using Catch::Matchers::WithinAbs;

TEST_CASE("propagation_matrix basics", "[transfer]") {
    SECTION("zero length is the identity") {
        const Matrix2 m = propagation_matrix(1.0, 0.0);
        CHECK(m.x11 == 1.0);
        CHECK(m.x12 == 0.0);
        CHECK(m.x21 == 0.0);
        CHECK(m.x22 == 1.0);
    }
    SECTION("quarter wave") {
        const double k = 2.7;
        const Matrix2 m = propagation_matrix(k, std::numbers::pi / (2.0 * k));
        CHECK_THAT(m.x11, WithinAbs(0.0, 1e-15));
        CHECK_THAT(m.x12, WithinAbs(1.0 / k, 1e-15));
        CHECK_THAT(m.x21, WithinAbs(-k, 1e-14));
        CHECK_THAT(m.x22, WithinAbs(0.0, 1e-15));
    }
    SECTION("determinant one at random arguments") {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> uni(0.1, 50.0);
        for (int i = 0; i < 100; ++i) {
            const Matrix2 m = propagation_matrix(uni(rng), uni(rng));
            CHECK_THAT(m.determinant(), WithinAbs(1.0, 1e-12));
        }
    }
    SECTION("non-positive wave vector rejected") {
        CHECK_THROWS_AS(propagation_matrix(0.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(propagation_matrix(-1.0, 1.0), std::invalid_argument);
    }
}

TEST_CASE("membrane_matrix basics", "[transfer]") {
    SECTION("transparent membrane is the identity") {
        const Matrix2 m = membrane_matrix(3.0, 0.0);
        CHECK(m.x11 == 1.0);
        CHECK(m.x12 == 0.0);
        CHECK(m.x21 == 0.0);
        CHECK(m.x22 == 1.0);
    }
    SECTION("unit determinant always") {
        std::mt19937 rng(8);
        std::uniform_real_distribution<double> uni(0.1, 10.0);
        for (int i = 0; i < 50; ++i)
            CHECK(membrane_matrix(uni(rng), uni(rng)).determinant() == 1.0);
    }
    SECTION("zeta for R = 0.7") {
        // zeta = 2 sqrt(R/(1-R))
        const double zeta = 2.0 * std::sqrt(0.7 / 0.3);
        CHECK_THAT(zeta, WithinAbs(3.0550504633038935, 1e-12));
    }
}
