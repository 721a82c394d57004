#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "nestres/medium.hpp"

namespace nestres {

/// Two-term small-contrast expansion omega = a1 sqrt(delta) + a2 delta.
struct AsymptoticFrequency {
    Complex omega;
    double leading = 0.0;  ///< a1 > 0
    Complex damping;       ///< a2, purely imaginary with Im <= 0
    int branch = 1;        ///< 1 = lower leading coefficient
};

using FrequencyPair = std::pair<AsymptoticFrequency, AsymptoticFrequency>;

// Solid ball of radius r1 (one layer).
AsymptoticFrequency omega_solid(double r1, double v_r, double tau, double delta);

// Spherical shell r2 < |x| < r1 (two layers).
AsymptoticFrequency omega_shell(double r1, double r2, double v_r, double tau, double delta);

/// Shell around a solid core (three layers); branch 1 then branch 2.
FrequencyPair omega_dual3(double r1, double r2, double r3, double v_r, double tau, double delta);

/// Two nested shells (four layers); branch 1 then branch 2.
FrequencyPair omega_dual4(double r1, double r2, double r3, double r4, double v_r, double tau, double delta);

/// Single resonator of general shape from the capacity of its outer boundary and its volume.
AsymptoticFrequency omega_general_single(double capacity, double volume, double v_r, double tau, double delta);

/// Capacity-to-volume ratio of a concentric shell, r_outer / (r_outer^3 - r_inner^3).
double cvr(double r_outer, double r_inner);

/// Capacity 4 pi r of a sphere and volume of a shell; r_inner = 0 gives a ball.
double sphere_capacity(double r);
double shell_volume(double r_outer, double r_inner);

struct HybridizationReport {
    double cvr_outer = 0.0;  ///< CVR of the (r1, r2) shell
    double cvr_inner = 0.0;  ///< CVR of the (r3, r4) shell
    bool precondition_met = false;  ///< cvr_outer <= cvr_inner
    AsymptoticFrequency dual_low;     ///< four-layer branch 1
    AsymptoticFrequency outer_shell;  ///< outer shell on its own
    AsymptoticFrequency inner_shell;  ///< inner shell on its own
    AsymptoticFrequency dual_high;    ///< four-layer branch 2
    /// Re w41 < Re w_OS <= Re w_IS < Re w42; empty when the precondition fails.
    std::optional<bool> ordering_holds;
};

HybridizationReport hybridization_check(double r1, double r2, double r3, double r4, const MediumSpec& medium);

/// Asymptotic frequencies for N = 1..4 layers; throws std::invalid_argument for N >= 5.
std::vector<AsymptoticFrequency> asymptotic_frequencies(const LayeredGeometry& geom, const MediumSpec& medium);

}  // namespace nestres
