#pragma once

#include <complex>

namespace nestres {

using Complex = std::complex<double>;

/// Spherical Bessel function of the first kind j_n(z), complex argument.
/// Regular at the origin.
Complex sph_bessel_j(int n, Complex z);

/// Spherical Hankel function of the first kind h_n^(1)(z).
/// Throws std::domain_error at z = 0.
Complex sph_hankel1(int n, Complex z);

/// d/dz j_n(z). j'_0(0) = 0; higher orders throw std::domain_error at z = 0.
Complex sph_bessel_j_prime(int n, Complex z);

/// d/dz h_n^(1)(z). Throws std::domain_error at z = 0.
Complex sph_hankel1_prime(int n, Complex z);

namespace detail {
// |z| below which j_0 is evaluated by its truncated Taylor series.
inline constexpr double kJ0SeriesRadius = 1e-2;
Complex j0_series(Complex z);
Complex j0_closed(Complex z);
}  // namespace detail

}  // namespace nestres
