#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace nestres {

using Complex = std::complex<double>;

/// Two-phase material: resonator (high-contrast) phase and host matrix phase.
struct MediumSpec {
    double rho_r = 1.0;    ///< resonator density
    double kappa_r = 1.0;  ///< resonator bulk modulus
    double rho = 1.0;      ///< matrix density
    double kappa = 1.0;    ///< matrix bulk modulus
    double delta = 1.0;    ///< density contrast rho_r / rho
    double tau = 1.0;      ///< wavenumber ratio k_r / k = v / v_r
    double v = 1.0;        ///< matrix wave speed
    double v_r = 1.0;      ///< resonator wave speed
};

/// Builds a medium and its derived contrast/speed parameters.
/// Throws std::invalid_argument unless all four inputs are strictly positive.
MediumSpec make_medium(double rho_r, double kappa_r, double rho, double kappa);

/// Unit resonator parameters with rho = kappa = 1/delta, so tau = v = v_r = 1.
MediumSpec medium_from_delta(double delta);

struct Wavenumbers {
    Complex k;    ///< matrix wavenumber omega / v
    Complex k_r;  ///< resonator wavenumber omega / v_r
};

Wavenumbers wavenumbers(const MediumSpec& medium, Complex omega);

/// Concentric layers, radii stored outermost-first: r_1 > r_2 > ... > r_N > 0.
class LayeredGeometry {
public:
    /// Throws std::invalid_argument if the list is empty, non-positive, or not strictly decreasing.
    explicit LayeredGeometry(std::vector<double> radii);

    [[nodiscard]] std::span<const double> radii() const { return radii_; }
    /// Radius r_i with 1-based interface index i.
    [[nodiscard]] double radius(std::size_t i) const { return radii_.at(i - 1); }
    [[nodiscard]] std::size_t n_layers() const { return radii_.size(); }
    /// floor((N + 1) / 2)
    [[nodiscard]] std::size_t n_resonators() const { return (radii_.size() + 1) / 2; }

    /// Inner radius of layer D_j (0 for the innermost ball, j = N).
    [[nodiscard]] double inner_radius(std::size_t j) const;
    /// Outer radius of layer D_j for j >= 1.
    [[nodiscard]] double outer_radius(std::size_t j) const { return radius(j); }

private:
    std::vector<double> radii_;
};

/// r_i = N - i + 1.
LayeredGeometry geometry_equidistant(int n_layers);

/// r_{i+1} = s * r_i starting from r_1; requires 0 < s < 1.
LayeredGeometry geometry_geometric(int n_layers, double r1, double s);

enum class Phase { Matrix, Resonator };

struct LayerMaterial {
    double density;
    double bulk_modulus;
    Phase phase;  ///< selects the k (Matrix) or k_r (Resonator) branch
};

/// Material of layer D_j, j = 0 (exterior) ... N. Odd j is resonator, even j is matrix.
LayerMaterial layer_material(std::size_t j, std::size_t n_layers, const MediumSpec& medium);

inline bool is_resonator_layer(std::size_t j) { return j % 2 == 1; }

}  // namespace nestres
