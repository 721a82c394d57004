#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "nestres/medium.hpp"

namespace nestres {

/// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    [[nodiscard]] double frobenius_norm() const;
    [[nodiscard]] std::vector<Complex> multiply(const std::vector<Complex>& x) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Complex number held as mantissa * 2^exponent with 1 <= |mantissa| < 2,
/// so determinants of many O(delta)/O(1/omega) factors neither under- nor overflow.
/// Zero is mantissa 0, exponent 0.
class ScaledDeterminant {
public:
    ScaledDeterminant() = default;
    ScaledDeterminant(Complex mantissa, long exponent);
    static ScaledDeterminant from_complex(Complex value) { return {value, 0}; }

    [[nodiscard]] Complex mantissa() const { return mantissa_; }
    [[nodiscard]] long exponent() const { return exponent_; }
    [[nodiscard]] bool is_zero() const { return mantissa_ == Complex{0.0, 0.0}; }

    /// Plain complex value; may overflow to inf or underflow to 0.
    [[nodiscard]] Complex value() const;
    /// mantissa * 2^(exponent - reference_exponent)
    [[nodiscard]] Complex scaled_value(long reference_exponent) const;
    /// log|value|; -inf for zero.
    [[nodiscard]] double log_abs() const;

    ScaledDeterminant& operator*=(Complex factor);
    ScaledDeterminant& operator/=(Complex divisor);
    [[nodiscard]] ScaledDeterminant conj() const { return {std::conj(mantissa_), exponent_}; }

private:
    void normalize();

    Complex mantissa_{0.0, 0.0};
    long exponent_ = 0;
};

/// A_N(omega, delta) for one angular order, columns ordered a_1, b_1, ..., a_N, b_N.
struct DispersionMatrix {
    int order_n = 0;
    Complex omega;
    ComplexMatrix entries;
};

/// Assembles the block-tridiagonal transmission system. Throws std::domain_error at omega = 0.
DispersionMatrix assemble(const LayeredGeometry& geom, const MediumSpec& medium, Complex omega, int n = 0);

/// Determinant by LU with partial pivoting, pivots accumulated in mantissa/exponent form.
ScaledDeterminant scaled_det(const ComplexMatrix& matrix);
inline ScaledDeterminant scaled_det(const DispersionMatrix& matrix) { return scaled_det(matrix.entries); }

/// f(omega) = det A_N(omega, delta) at a fixed geometry, medium and order.
class DispersionFunction {
public:
    DispersionFunction(LayeredGeometry geom, MediumSpec medium, int n = 0)
        : geom_(std::move(geom)), medium_(medium), order_(n) {}

    ScaledDeterminant operator()(Complex omega) const { return scaled_det(assemble(geom_, medium_, omega, order_)); }

    [[nodiscard]] const LayeredGeometry& geometry() const { return geom_; }
    [[nodiscard]] const MediumSpec& medium() const { return medium_; }
    [[nodiscard]] int order() const { return order_; }

private:
    LayeredGeometry geom_;
    MediumSpec medium_;
    int order_;
};

inline DispersionFunction dispersion_fn(const LayeredGeometry& geom, const MediumSpec& medium, int n = 0) {
    return {geom, medium, n};
}

}  // namespace nestres
