#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "helpers.hpp"
#include "optomech/hilbert.hpp"

using namespace optomech;
using Catch::Matchers::WithinAbs;

TEST_CASE("basis_state", "[hilbert]") {
    SECTION("single-term unit states") {
        const auto s = basis_state(2, 5, false, {0, 0});
        CHECK(s.term_count() == 1);
        CHECK_THAT(s.norm(), WithinAbs(1.0, 1e-15));
        const auto e = basis_state(2, 5, true, {1, 0});
        CHECK(e.amplitude({true, {1, 0}}) == Complex{1.0, 0.0});
    }
    SECTION("occupation at the cutoff is rejected") {
        CHECK_THROWS_AS(basis_state(1, 4, false, {4}), cutoff_violation);
        CHECK_THROWS_AS(basis_state(2, 4, false, {0, -1}), cutoff_violation);
    }
    SECTION("wrong mode count is a dimension error") {
        StateVector s(2, 4);
        CHECK_THROWS_AS(s.set_amplitude({false, {0}}, 1.0), dimension_mismatch);
    }
}

TEST_CASE("overlap_fidelity", "[hilbert]") {
    SECTION("self fidelity is one") {
        const auto psi = test_helpers::random_state(2, 6, 4, 42);
        CHECK_THAT(overlap_fidelity(psi, psi), WithinAbs(1.0, 1e-12));
    }
    SECTION("orthogonal single terms") {
        const auto a = basis_state(2, 4, false, {1, 0});
        const auto b = basis_state(2, 4, false, {0, 1});
        CHECK(overlap_fidelity(a, b) == 0.0);
    }
    SECTION("Bell against one component is 1/2") {
        const auto bell = target_state(TargetKind::Bell, 2, 4);
        const auto comp = basis_state(2, 4, false, {1, 0});
        CHECK_THAT(overlap_fidelity(bell.state, comp), WithinAbs(0.5, 1e-12));
    }
    SECTION("symmetric and phase invariant") {
        const auto a = test_helpers::random_state(2, 5, 3, 1);
        auto b = test_helpers::random_state(2, 5, 3, 2);
        const double f_ab = overlap_fidelity(a, b);
        CHECK_THAT(overlap_fidelity(b, a), WithinAbs(f_ab, 1e-14));
        StateVector c(2, 5);
        const Complex phase = std::polar(1.0, 1.234);
        for (const auto& [l, amp] : b.amplitudes())
            c.set_amplitude(l, amp * phase);
        CHECK_THAT(overlap_fidelity(a, c), WithinAbs(f_ab, 1e-13));
    }
    SECTION("dimension mismatch detected") {
        const auto a = basis_state(2, 4, false, {0, 0});
        const auto b = basis_state(2, 5, false, {0, 0});
        CHECK_THROWS_AS(overlap_fidelity(a, b), dimension_mismatch);
    }
}

TEST_CASE("target states", "[hilbert]") {
    SECTION("W with three modes") {
        const auto w = target_state(TargetKind::W, 3, 6);
        CHECK(w.state.term_count() == 3);
        CHECK_THAT(w.state.norm(), WithinAbs(1.0, 1e-15));
        const double a = 1.0 / std::sqrt(3.0);
        CHECK_THAT(w.state.amplitude({false, {1, 0, 0}}).real(), WithinAbs(a, 1e-15));
        CHECK_THAT(w.state.amplitude({false, {0, 0, 1}}).real(), WithinAbs(a, 1e-15));
    }
    SECTION("NOON with two phonons") {
        const auto noon = target_state(TargetKind::NOON, 2, 7, 2);
        CHECK(noon.state.term_count() == 2);
        CHECK_THAT(noon.state.amplitude({false, {2, 0}}).real(),
                   WithinAbs(1.0 / std::sqrt(2.0), 1e-15));
        CHECK_THAT(noon.state.amplitude({false, {0, 2}}).real(),
                   WithinAbs(1.0 / std::sqrt(2.0), 1e-15));
    }
    SECTION("GHZ at N = 2 is the 00+11 pair") {
        const auto ghz = target_state(TargetKind::GHZ, 2, 6);
        CHECK(ghz.state.term_count() == 2);
        CHECK(std::abs(ghz.state.amplitude({false, {0, 0}})) > 0.0);
        CHECK(std::abs(ghz.state.amplitude({false, {1, 1}})) > 0.0);
    }
    SECTION("arity errors") {
        CHECK_THROWS_AS(target_state(TargetKind::Bell, 3, 6), std::invalid_argument);
        CHECK_THROWS_AS(target_state(TargetKind::W, 1, 6), std::invalid_argument);
    }
}

TEST_CASE("pruning perturbs fidelity only at the eps scale", "[hilbert]") {
    auto psi = test_helpers::random_state(2, 6, 4, 77);
    StateVector noisy(2, 6);
    for (const auto& [l, a] : psi.amplitudes())
        noisy.set_amplitude(l, a);
    // sprinkle tiny terms
    noisy.accumulate({true, {5, 5}}, {1e-15, 0.0});
    noisy.accumulate({false, {5, 4}}, {0.0, -1e-15});
    const std::size_t before = noisy.term_count();
    noisy.prune();
    CHECK(noisy.term_count() < before);
    CHECK_THAT(overlap_fidelity(noisy, psi), WithinAbs(1.0, before * kPruneEps));
}
