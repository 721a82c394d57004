#include "nestres/dispersion.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "nestres/specfun.hpp"

namespace nestres {

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

std::vector<Complex> ComplexMatrix::multiply(const std::vector<Complex>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
    std::vector<Complex> y(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        Complex acc = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * x[c];
        y[r] = acc;
    }
    return y;
}

ScaledDeterminant::ScaledDeterminant(Complex mantissa, long exponent) : mantissa_(mantissa), exponent_(exponent) {
    normalize();
}

void ScaledDeterminant::normalize() {
    const double mag = std::abs(mantissa_);
    if (mag == 0.0) {
        mantissa_ = 0.0;
        exponent_ = 0;
        return;
    }
    if (!std::isfinite(mag)) return;
    int e = 0;
    std::frexp(mag, &e);  // mag = f * 2^e, f in [0.5, 1)
    const int shift = e - 1;
    mantissa_ = {std::ldexp(mantissa_.real(), -shift), std::ldexp(mantissa_.imag(), -shift)};
    exponent_ += shift;
}

Complex ScaledDeterminant::scaled_value(long reference_exponent) const {
    const long e = exponent_ - reference_exponent;
    const int ei = e > 100000 ? 100000 : (e < -100000 ? -100000 : static_cast<int>(e));
    return {std::ldexp(mantissa_.real(), ei), std::ldexp(mantissa_.imag(), ei)};
}

Complex ScaledDeterminant::value() const {
    return scaled_value(0);
}

double ScaledDeterminant::log_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(mantissa_)) + static_cast<double>(exponent_) * std::numbers::ln2;
}

ScaledDeterminant& ScaledDeterminant::operator*=(Complex factor) {
    mantissa_ *= factor;
    normalize();
    return *this;
}

ScaledDeterminant& ScaledDeterminant::operator/=(Complex divisor) {
    mantissa_ /= divisor;
    normalize();
    return *this;
}

DispersionMatrix assemble(const LayeredGeometry& geom, const MediumSpec& medium, Complex omega, int n) {
    if (omega == Complex{0.0, 0.0}) throw std::domain_error("dispersion matrix is singular at omega = 0 (Hankel pole)");
    const auto [k, k_r] = wavenumbers(medium, omega);
    const std::size_t N = geom.n_layers();

    DispersionMatrix out{n, omega, ComplexMatrix(2 * N, 2 * N)};
    auto& A = out.entries;

    for (std::size_t i = 1; i <= N; ++i) {
        const double r = geom.radius(i);
        // Odd interfaces have matrix outside and resonator inside; even ones the reverse.
        const bool odd = i % 2 == 1;
        const Complex k_out = odd ? k : k_r;
        const Complex k_in = odd ? k_r : k;
        const double s_out = odd ? medium.delta : medium.tau;
        const double s_in = odd ? medium.tau : medium.delta;

        const std::size_t row = 2 * (i - 1);
        const std::size_t col_a = 2 * (i - 1);
        const std::size_t col_b = col_a + 1;

        // M block
        A(row, col_a) = -sph_hankel1(n, k_out * r);
        A(row, col_b) = sph_bessel_j(n, k_in * r);
        A(row + 1, col_a) = -s_out * sph_hankel1_prime(n, k_out * r);
        A(row + 1, col_b) = s_in * sph_bessel_j_prime(n, k_in * r);

        // R block: a_{i+1}
        if (i < N) {
            A(row, col_a + 2) = sph_hankel1(n, k_in * r);
            A(row + 1, col_a + 2) = s_in * sph_hankel1_prime(n, k_in * r);
        }
        // L block: b_{i-1}
        if (i > 1) {
            A(row, col_a - 1) = -sph_bessel_j(n, k_out * r);
            A(row + 1, col_a - 1) = -s_out * sph_bessel_j_prime(n, k_out * r);
        }
    }
    return out;
}

ScaledDeterminant scaled_det(const ComplexMatrix& matrix) {
    const std::size_t n = matrix.rows();
    if (n != matrix.cols()) throw std::invalid_argument("determinant requires a square matrix");
    ComplexMatrix lu = matrix;
    ScaledDeterminant det(1.0, 0);

    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        double best = std::abs(lu(c, c));
        for (std::size_t r = c + 1; r < n; ++r) {
            const double m = std::abs(lu(r, c));
            if (m > best) {
                best = m;
                piv = r;
            }
        }
        if (best == 0.0) return {};
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(piv, j), lu(c, j));
            det *= -1.0;
        }
        const Complex p = lu(c, c);
        det *= p;
        for (std::size_t r = c + 1; r < n; ++r) {
            const Complex l = lu(r, c) / p;
            if (l == Complex{0.0, 0.0}) continue;
            for (std::size_t j = c + 1; j < n; ++j) lu(r, j) -= l * lu(c, j);
        }
    }
    return det;
}

}  // namespace nestres
