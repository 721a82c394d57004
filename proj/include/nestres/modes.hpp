#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "nestres/dispersion.hpp"
#include "nestres/medium.hpp"

namespace nestres {

/// Raised when a kernel vector does not annihilate the matrix to the required accuracy.
class ResidualError : public std::runtime_error {
public:
    ResidualError(const std::string& what, double residual) : std::runtime_error(what), residual(residual) {}
    double residual;
};

inline constexpr double kKernelResidualTol = 1e-6;

struct NullVector {
    std::vector<Complex> coeffs;        ///< a_1, b_1, ..., a_N, b_N
    std::vector<double> pivot_moduli;   ///< |pivot| in elimination order (non-increasing in practice)
    double residual = 0.0;              ///< ||A c|| / (||A||_F ||c||)
};

/// Kernel vector by Gaussian elimination with full pivoting; the unknown at the last
/// pivot is set to 1 and the rest back-substituted. Throws ResidualError above `tol`.
NullVector null_vector(const ComplexMatrix& matrix, double tol = kKernelResidualTol);
inline NullVector null_vector(const DispersionMatrix& m, double tol = kKernelResidualTol) {
    return null_vector(m.entries, tol);
}

/// Monopolar eigenmode: u = norm_constant * (expansion with coefficients a_j, b_j).
struct ModeProfile {
    Complex omega;
    std::vector<Complex> a;  ///< a_1..a_N; a_{N+1} = 0 is implicit
    std::vector<Complex> b;  ///< b_1..b_N
    double norm_constant = 1.0;
    double kernel_residual = 0.0;
    LayeredGeometry geometry;
    MediumSpec medium;
};

/// Unnormalised profile from the kernel of A_N at `omega` (order 0).
ModeProfile build_mode(const LayeredGeometry& geom, const MediumSpec& medium, Complex omega,
                       double tol = kKernelResidualTol);

/// Region index j of radius r: 0 outside r_1, j for r_{j+1} < r <= r_j, N inside r_N.
std::size_t region_of(const LayeredGeometry& geom, double r);

/// Field of region j's expansion evaluated at r (r may lie outside the region).
Complex field_in_region(const ModeProfile& p, std::size_t j, double r);
/// (1 / rho_j) du/dr of region j's expansion at r.
Complex flux_in_region(const ModeProfile& p, std::size_t j, double r);

Complex evaluate_field(const ModeProfile& p, double r);

/// sum over resonator layers of 4 pi int |u|^2 r^2 dr, one Gauss-Legendre rule per layer.
double resonator_mass(const ModeProfile& p, int gl_order = 32);

/// Rotates the innermost resonator's b coefficient to the positive real axis and
/// sets norm_constant for unit resonator mass. Throws std::domain_error on zero mass.
ModeProfile normalize(ModeProfile p, int gl_order = 32);

/// build_mode + normalize.
ModeProfile make_mode(const LayeredGeometry& geom, const MediumSpec& medium, Complex omega);

struct RadialSample {
    double r;
    Complex u;
    std::size_t region;
};

struct RadialSamples {
    std::vector<RadialSample> rows;
    std::vector<double> markers;  ///< interface radii r_1..r_N
};

/// npts uniform samples on [0, r_max].
RadialSamples sample_radial(const ModeProfile& p, double r_max, int npts);

struct PlaneSamples {
    int resolution = 0;
    double half_extent = 0.0;
    std::vector<double> coords;  ///< shared x and y axis coordinates
    std::vector<double> re_u;    ///< row-major, row index = y
    std::vector<double> im_u;    ///< same layout as re_u
    std::vector<double> circles; ///< interface radii for overlays

    [[nodiscard]] double at(int ix, int iy) const { return re_u[static_cast<std::size_t>(iy) * resolution + ix]; }
};

/// u on the z = 0 plane over [-half_extent, half_extent]^2.
PlaneSamples sample_plane(const ModeProfile& p, double half_extent, int resolution);

struct LayerFlatness {
    std::size_t layer;
    double variation;  ///< (max|u| - min|u|) / mean|u|
};

/// Variation of |u| across each resonator layer; the exterior is not included.
std::vector<LayerFlatness> flatness(const ModeProfile& p, int points = 512);

}  // namespace nestres
