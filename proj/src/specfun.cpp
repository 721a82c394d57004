#include "nestres/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace nestres {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_order(int n) {
    if (n < 0) throw std::invalid_argument("spherical Bessel order must be non-negative, got " + std::to_string(n));
}

// Power series about the origin, used for n >= 1 and |z| < 1.
Complex jn_series(int n, Complex z) {
    Complex lead = 1.0;
    double dfact = 1.0;  // (2n+1)!!
    for (int k = 1; k <= n; ++k) {
        lead *= z;
        dfact *= 2.0 * k + 1.0;
    }
    lead /= dfact;

    const Complex w = -0.5 * z * z;
    Complex term = 1.0;
    Complex sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        term *= w / (static_cast<double>(k) * (2.0 * n + 2.0 * k + 1.0));
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return lead * sum;
}

Complex j1_closed(Complex z) {
    return std::sin(z) / (z * z) - std::cos(z) / z;
}

Complex j2_closed(Complex z) {
    const Complex z2 = z * z;
    return (3.0 / z2 - 1.0) * std::sin(z) / z - 3.0 * std::cos(z) / z2;
}

// Downward (Miller) recurrence, normalised against whichever of j_0, j_1 is larger.
Complex jn_miller(int n, Complex z) {
    const int start = n + static_cast<int>(std::abs(z)) + 40;
    std::vector<Complex> f(start + 2, Complex{0.0, 0.0});
    f[start] = 1e-30;
    for (int k = start; k > 0; --k) {
        f[k - 1] = (2.0 * k + 1.0) / z * f[k] - f[k + 1];
        if (std::abs(f[k - 1]) > 1e200) {
            for (int m = k - 1; m <= start; ++m) f[m] *= 1e-200;
        }
    }
    const Complex j0 = detail::j0_closed(z);
    const Complex j1 = j1_closed(z);
    if (std::abs(j0) >= std::abs(j1)) return f[n] * (j0 / f[0]);
    return f[n] * (j1 / f[1]);
}

// Finite closed form h_n(z) = (-i)^{n+1} e^{iz}/z sum_k i^k (n+k)!/(k!(n-k)!(2z)^k).
Complex hn_closed(int n, Complex z) {
    Complex sum = 0.0;
    Complex ik = 1.0;
    for (int k = 0; k <= n; ++k) {
        double c = 1.0;
        for (int m = n - k + 1; m <= n + k; ++m) c *= m;  // (n+k)!/(n-k)!
        for (int m = 2; m <= k; ++m) c /= m;
        sum += ik * c / std::pow(2.0 * z, k);
        ik *= kI;
    }
    Complex pref = 1.0;
    for (int k = 0; k <= n; ++k) pref *= -kI;
    return pref * std::exp(kI * z) / z * sum;
}

}  // namespace

namespace detail {

Complex j0_series(Complex z) {
    // 1 - t^2/6 + t^4/120 - t^6/5040 + t^8/362880
    const Complex t2 = z * z;
    return 1.0 + t2 * (-1.0 / 6.0 + t2 * (1.0 / 120.0 + t2 * (-1.0 / 5040.0 + t2 * (1.0 / 362880.0))));
}

Complex j0_closed(Complex z) {
    return std::sin(z) / z;
}

}  // namespace detail

Complex sph_bessel_j(int n, Complex z) {
    check_order(n);
    if (n == 0) {
        if (std::abs(z) < detail::kJ0SeriesRadius) return detail::j0_series(z);
        return detail::j0_closed(z);
    }
    if (z == Complex{0.0, 0.0}) return 0.0;
    if (std::abs(z) < 1.0) return jn_series(n, z);
    if (n == 1) return j1_closed(z);
    if (n == 2) return j2_closed(z);
    return jn_miller(n, z);
}

Complex sph_hankel1(int n, Complex z) {
    check_order(n);
    if (z == Complex{0.0, 0.0}) throw std::domain_error("spherical Hankel function has a pole at z = 0");
    if (n == 0) return -kI * std::exp(kI * z) / z;
    if (n <= 2) return hn_closed(n, z);
    Complex prev = hn_closed(1, z);
    Complex cur = hn_closed(2, z);
    for (int k = 2; k < n; ++k) {
        const Complex next = (2.0 * k + 1.0) / z * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

Complex sph_bessel_j_prime(int n, Complex z) {
    check_order(n);
    if (n == 0) return -sph_bessel_j(1, z);
    if (z == Complex{0.0, 0.0}) throw std::domain_error("j_n'(z) recurrence divides by z; z = 0 not supported for n >= 1");
    return sph_bessel_j(n - 1, z) - (n + 1.0) / z * sph_bessel_j(n, z);
}

Complex sph_hankel1_prime(int n, Complex z) {
    check_order(n);
    if (z == Complex{0.0, 0.0}) throw std::domain_error("spherical Hankel function has a pole at z = 0");
    if (n == 0) return -sph_hankel1(1, z);
    return sph_hankel1(n - 1, z) - (n + 1.0) / z * sph_hankel1(n, z);
}

}  // namespace nestres
