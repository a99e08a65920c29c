#pragma once

#include <complex>
#include <random>
#include <vector>

#include "optomech/hilbert.hpp"

namespace test_helpers {

// Random normalized state with support on every occupation below max_occ
// (inclusive), both cavity levels.
inline optomech::StateVector random_state(int n_modes, int cutoff, int max_occ,
                                          std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    optomech::StateVector s(n_modes, cutoff);
    std::vector<int> occ(n_modes, 0);
    const auto emit = [&](bool excited) {
        s.set_amplitude({excited, occ}, {uni(rng), uni(rng)});
    };
    // odometer over occupations in [0, max_occ]
    while (true) {
        emit(false);
        emit(true);
        int i = n_modes - 1;
        while (i >= 0 && occ[i] == max_occ) {
            occ[i] = 0;
            --i;
        }
        if (i < 0)
            break;
        ++occ[i];
    }
    s.normalize();
    return s;
}

// Dense complex matrix exponential exp(A) by scaling and squaring with a
// Taylor series; adequate for the small oracle spaces used in tests.
using CMat = std::vector<std::vector<std::complex<double>>>;

inline CMat cmat_identity(std::size_t n) {
    CMat m(n, std::vector<std::complex<double>>(n));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1.0;
    return m;
}

inline CMat cmat_mul(const CMat& a, const CMat& b) {
    const std::size_t n = a.size();
    CMat c(n, std::vector<std::complex<double>>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const auto aik = a[i][k];
            if (aik == std::complex<double>{})
                continue;
            for (std::size_t j = 0; j < n; ++j)
                c[i][j] += aik * b[k][j];
        }
    return c;
}

inline CMat cmat_exp(CMat a) {
    const std::size_t n = a.size();
    double norm = 0.0;
    for (const auto& row : a) {
        double r = 0.0;
        for (const auto& v : row)
            r += std::abs(v);
        norm = std::max(norm, r);
    }
    int squarings = 0;
    while (norm > 0.5) {
        norm /= 2.0;
        ++squarings;
    }
    const double scale = std::ldexp(1.0, -squarings);
    for (auto& row : a)
        for (auto& v : row)
            v *= scale;
    CMat result = cmat_identity(n);
    CMat term = cmat_identity(n);
    for (int k = 1; k <= 24; ++k) {
        term = cmat_mul(term, a);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                term[i][j] /= static_cast<double>(k);
                result[i][j] += term[i][j];
            }
    }
    for (int s = 0; s < squarings; ++s)
        result = cmat_mul(result, result);
    return result;
}

}  // namespace test_helpers
