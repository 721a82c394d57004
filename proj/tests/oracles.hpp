#pragma once

// Reference implementations used only by the tests. Nothing here calls into the
// library's special functions or determinant code.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using C = std::complex<double>;
inline const C I{0.0, 1.0};

inline C j0(C z) { return std::sin(z) / z; }
inline C j1(C z) { return std::sin(z) / (z * z) - std::cos(z) / z; }
inline C h0(C z) { return -I * std::exp(I * z) / z; }
inline C h1(C z) { return (-1.0 / z - I / (z * z)) * std::exp(I * z); }
inline C j0p(C z) { return (z * std::cos(z) - std::sin(z)) / (z * z); }
inline C h0p(C z) { return -h1(z); }

using Matrix = std::vector<std::vector<C>>;

/// Laplace expansion along the first row; O(n!) and exact up to rounding.
inline C cofactor_det(const Matrix& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    C acc = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c] == C{0.0, 0.0}) continue;
        Matrix minor(n - 1, std::vector<C>(n - 1));
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0, jj = 0; j < n; ++j)
                if (j != c) minor[i - 1][jj++] = m[i][j];
        acc += (c % 2 == 0 ? 1.0 : -1.0) * m[0][c] * cofactor_det(minor);
    }
    return acc;
}

/// Order-0 matrix of a single ball (radius r1), unit speeds, contrast delta and ratio tau.
inline Matrix ball_matrix(double r1, double delta, double tau, C omega) {
    const C k = omega;
    const C kr = omega;
    return {{-h0(k * r1), j0(kr * r1)}, {-delta * h0p(k * r1), tau * j0p(kr * r1)}};
}

/// Order-0 matrix of a shell r2 < r < r1, unit speeds, written out entry by entry.
inline Matrix shell_matrix(double r1, double r2, double delta, double tau, C omega) {
    const C k = omega;
    const C kr = omega;
    return {
        {-h0(k * r1), j0(kr * r1), h0(kr * r1), 0.0},
        {-delta * h0p(k * r1), tau * j0p(kr * r1), tau * h0p(kr * r1), 0.0},
        {0.0, -j0(kr * r2), -h0(kr * r2), j0(k * r2)},
        {0.0, -tau * j0p(kr * r2), -tau * h0p(kr * r2), delta * j0p(k * r2)},
    };
}

/// Plain secant iteration; converges from a close start for a simple root.
inline C secant(const std::function<C(C)>& f, C x0, C x1, int iters = 60) {
    C f0 = f(x0);
    C f1 = f(x1);
    for (int i = 0; i < iters && f1 != f0; ++i) {
        const C x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f(x1);
        if (std::abs(x1 - x0) <= 1e-15 * std::abs(x1)) break;
    }
    return x1;
}

}  // namespace oracle
