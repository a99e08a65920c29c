#pragma once

#include <cmath>
#include <stdexcept>

namespace optomech {

// 2x2 real transfer matrix acting on (E, E') field vectors.
// Off-diagonal entries carry units: x12 ~ length, x21 ~ 1/length.
struct Matrix2 {
    double x11 = 1.0, x12 = 0.0;
    double x21 = 0.0, x22 = 1.0;

    double determinant() const { return x11 * x22 - x12 * x21; }

    friend Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
        return {a.x11 * b.x11 + a.x12 * b.x21, a.x11 * b.x12 + a.x12 * b.x22,
                a.x21 * b.x11 + a.x22 * b.x21, a.x21 * b.x12 + a.x22 * b.x22};
    }
};

// Free-space propagation over length l at wave vector k (c = 1).
inline Matrix2 propagation_matrix(double k, double l) {
    if (!(k > 0.0))
        throw std::invalid_argument("propagation_matrix: wave vector must be positive");
    if (l < 0.0)
        throw std::invalid_argument("propagation_matrix: length must be non-negative");
    const double c = std::cos(k * l);
    const double s = std::sin(k * l);
    return {c, s / k, -k * s, c};
}

// Delta-susceptibility membrane with strength zeta = 2 sqrt(R/(1-R)).
inline Matrix2 membrane_matrix(double k, double zeta) {
    if (!(k > 0.0))
        throw std::invalid_argument("membrane_matrix: wave vector must be positive");
    if (zeta < 0.0)
        throw std::invalid_argument("membrane_matrix: zeta must be non-negative");
    return {1.0, 0.0, -k * zeta, 1.0};
}

}  // namespace optomech
