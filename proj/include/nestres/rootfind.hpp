#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nestres/dispersion.hpp"
#include "nestres/medium.hpp"

namespace nestres {

struct SearchConfig {
    double omega_max = 0.0;         ///< real scan ceiling; <= 0 selects the closed-form envelope
    int grid_points = 4000;         ///< real-axis scan resolution (>= 64)
    double tol_abs = 1e-12;
    double tol_rel = 1e-10;
    int max_iter = 100;             ///< Muller iteration cap
    double imag_seed_offset = 0.0;  ///< <= 0 selects delta
    double verify_tol = 1e-6;       ///< accepted |f(omega)| / local scale

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

struct ResonanceRoot {
    Complex omega;
    double residual = 0.0;  ///< |f(omega)| over the median |f| on a small surrounding circle
    int iterations = 0;
    Complex seed;
};

using AnalyticFn = std::function<ScaledDeterminant(Complex)>;

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fewer than N_r roots after the window expansion; carries what was found.
class ShortfallError : public std::runtime_error {
public:
    ShortfallError(std::vector<ResonanceRoot> found, std::size_t expected);
    std::vector<ResonanceRoot> found;
    std::size_t expected;
};

/// Muller's three-point quadratic iteration. `window` bounds |omega| before the
/// iteration is declared divergent; pass infinity to disable.
ResonanceRoot muller(const AnalyticFn& f, std::array<Complex, 3> seeds, const SearchConfig& cfg,
                     double window = std::numeric_limits<double>::infinity());

struct RootCheck {
    bool ok = false;
    double residual = 0.0;
};

/// |f(omega)| against the median |f| over 16 points on the circle of radius |omega| * 1e-2.
RootCheck verify_root(const AnalyticFn& f, Complex omega, double tolerance);

struct RootSearchResult {
    std::vector<ResonanceRoot> roots;  ///< ascending real part
    double omega_max = 0.0;            ///< window actually scanned
    bool window_expanded = false;
    std::size_t duplicates_merged = 0;
};

/// Scan ceiling 8 v_r sqrt(3 delta) sqrt(r1 / (r1^3 - r2^3)) sqrt(N_r), with r2 = 0 for one layer.
double default_omega_max(const LayeredGeometry& geom, const MediumSpec& medium);

/// Values of log|f(omega)| + 2N log(omega) along the scan grid omega_i = omega_max * i / points.
/// The compensation removes the omega^(-2N) background so every near-real root shows as a dip.
std::vector<double> scan_profile(const DispersionFunction& f, double omega_max, int points);

/// All characteristic values with positive real part in the subwavelength window.
/// Throws ShortfallError when fewer than N_r are found.
RootSearchResult find_subwavelength_roots(const LayeredGeometry& geom, const MediumSpec& medium, int n,
                                          const SearchConfig& cfg);

}  // namespace nestres
