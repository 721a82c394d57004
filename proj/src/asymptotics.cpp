#include "nestres/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nestres {

namespace {

void require_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be positive");
}

void require_material(double v_r, double tau, double delta) {
    require_positive(v_r, "v_r");
    require_positive(tau, "tau");
    require_positive(delta, "delta");
}

void require_decreasing(std::initializer_list<double> radii) {
    double prev = std::numeric_limits<double>::infinity();
    for (double r : radii) {
        require_positive(r, "radius");
        if (!(r < prev)) throw std::invalid_argument("radii must be strictly decreasing");
        prev = r;
    }
}

// Principal square root of a quantity that is positive by construction.
double checked_sqrt(double x, const char* what) {
    if (!(x > 0.0)) throw std::logic_error(std::string(what) + " is not positive (" + std::to_string(x) + ")");
    return std::sqrt(x);
}

AsymptoticFrequency make(double a1, double a2_imag, double delta, int branch) {
    AsymptoticFrequency w;
    w.leading = a1;
    w.damping = Complex{0.0, a2_imag};
    w.omega = a1 * std::sqrt(delta) + w.damping * delta;
    w.branch = branch;
    return w;
}

}  // namespace

AsymptoticFrequency omega_solid(double r1, double v_r, double tau, double delta) {
    require_positive(r1, "r1");
    require_material(v_r, tau, delta);
    const double a1 = std::sqrt(3.0) * v_r / r1;
    const double a2 = -3.0 * v_r / (2.0 * tau * r1);
    return make(a1, a2, delta, 1);
}

AsymptoticFrequency omega_shell(double r1, double r2, double v_r, double tau, double delta) {
    require_decreasing({r1, r2});
    require_material(v_r, tau, delta);
    const double vol = r1 * r1 * r1 - r2 * r2 * r2;
    const double a1 = std::sqrt(3.0 * r1) * v_r / std::sqrt(vol);
    const double a2 = -3.0 * r1 * r1 * v_r / (2.0 * tau * vol);
    return make(a1, a2, delta, 1);
}

FrequencyPair omega_dual3(double r1, double r2, double r3, double v_r, double tau, double delta) {
    require_decreasing({r1, r2, r3});
    require_material(v_r, tau, delta);
    const double c1 = r1 * r1 * r1 - r2 * r2 * r2;
    const double xi = r2 * (r1 * r1 * r1 - r2 * r2 * r2 + r3 * r3 * r3) + r1 * r3 * r3 * (r2 - r3);
    const double denom = (r2 - r3) * c1 * r3 * r3;
    const double disc = xi * xi - 4.0 * r1 * r2 * r3 * r3 * (r2 - r3) * c1;
    const double root = checked_sqrt(disc, "three-layer discriminant");

    const double a1_lo = v_r * checked_sqrt((3.0 * xi - 3.0 * root) / (2.0 * denom), "three-layer a1^2 (branch 1)");
    const double a1_hi = v_r * checked_sqrt((3.0 * xi + 3.0 * root) / (2.0 * denom), "three-layer a1^2 (branch 2)");
    const double scale = r1 * r1 * v_r / (4.0 * tau * c1 * root);
    const double a2_lo = -(3.0 * (-xi + root) + 6.0 * r2 * c1) * scale;
    const double a2_hi = -(3.0 * (xi + root) - 6.0 * r2 * c1) * scale;
    return {make(a1_lo, a2_lo, delta, 1), make(a1_hi, a2_hi, delta, 2)};
}

FrequencyPair omega_dual4(double r1, double r2, double r3, double r4, double v_r, double tau, double delta) {
    require_decreasing({r1, r2, r3, r4});
    require_material(v_r, tau, delta);
    const double c1 = r1 * r1 * r1 - r2 * r2 * r2;
    const double c3 = r3 * r3 * r3 - r4 * r4 * r4;
    const double xi = r2 * r3 * (r1 * r1 * r1 - r2 * r2 * r2 + r3 * r3 * r3 - r4 * r4 * r4) + r1 * (r2 - r3) * c3;
    const double denom = c1 * c3 * (r2 - r3);
    const double disc = xi * xi - 4.0 * r1 * r2 * r3 * c1 * c3 * (r2 - r3);
    const double root = checked_sqrt(disc, "four-layer discriminant");

    const double a1_lo = v_r * checked_sqrt((3.0 * xi - 3.0 * root) / (2.0 * denom), "four-layer a1^2 (branch 1)");
    const double a1_hi = v_r * checked_sqrt((3.0 * xi + 3.0 * root) / (2.0 * denom), "four-layer a1^2 (branch 2)");
    const double scale = v_r * r1 * r1 / (4.0 * tau * c1 * root);
    const double a2_lo = -(3.0 * (-xi + root) + 6.0 * r2 * r3 * c1) * scale;
    const double a2_hi = -(3.0 * (xi + root) - 6.0 * r2 * r3 * c1) * scale;
    return {make(a1_lo, a2_lo, delta, 1), make(a1_hi, a2_hi, delta, 2)};
}

AsymptoticFrequency omega_general_single(double capacity, double volume, double v_r, double tau, double delta) {
    require_positive(capacity, "capacity");
    require_positive(volume, "volume");
    require_material(v_r, tau, delta);
    const double a1 = v_r * std::sqrt(capacity / volume);
    const double a2 = -capacity * capacity * v_r / (8.0 * std::numbers::pi * tau * volume);
    return make(a1, a2, delta, 1);
}

double cvr(double r_outer, double r_inner) {
    if (!(r_inner >= 0.0)) throw std::invalid_argument("inner radius must be non-negative");
    if (!(r_outer > r_inner)) throw std::invalid_argument("outer radius must exceed inner radius");
    return r_outer / (r_outer * r_outer * r_outer - r_inner * r_inner * r_inner);
}

double sphere_capacity(double r) {
    require_positive(r, "radius");
    return 4.0 * std::numbers::pi * r;
}

double shell_volume(double r_outer, double r_inner) {
    if (!(r_inner >= 0.0) || !(r_outer > r_inner)) throw std::invalid_argument("shell needs r_outer > r_inner >= 0");
    return 4.0 * std::numbers::pi * (r_outer * r_outer * r_outer - r_inner * r_inner * r_inner) / 3.0;
}

HybridizationReport hybridization_check(double r1, double r2, double r3, double r4, const MediumSpec& medium) {
    require_decreasing({r1, r2, r3, r4});
    HybridizationReport rep;
    rep.cvr_outer = cvr(r1, r2);
    rep.cvr_inner = cvr(r3, r4);
    rep.precondition_met = rep.cvr_outer <= rep.cvr_inner;
    if (!rep.precondition_met) return rep;

    const auto [low, high] = omega_dual4(r1, r2, r3, r4, medium.v_r, medium.tau, medium.delta);
    rep.dual_low = low;
    rep.dual_high = high;
    rep.outer_shell = omega_shell(r1, r2, medium.v_r, medium.tau, medium.delta);
    rep.inner_shell = omega_shell(r3, r4, medium.v_r, medium.tau, medium.delta);
    rep.ordering_holds = low.omega.real() < rep.outer_shell.omega.real() &&
                         rep.outer_shell.omega.real() <= rep.inner_shell.omega.real() &&
                         rep.inner_shell.omega.real() < high.omega.real();
    return rep;
}

std::vector<AsymptoticFrequency> asymptotic_frequencies(const LayeredGeometry& geom, const MediumSpec& m) {
    const auto r = geom.radii();
    switch (geom.n_layers()) {
        case 1:
            return {omega_solid(r[0], m.v_r, m.tau, m.delta)};
        case 2:
            return {omega_shell(r[0], r[1], m.v_r, m.tau, m.delta)};
        case 3: {
            auto [a, b] = omega_dual3(r[0], r[1], r[2], m.v_r, m.tau, m.delta);
            return {a, b};
        }
        case 4: {
            auto [a, b] = omega_dual4(r[0], r[1], r[2], r[3], m.v_r, m.tau, m.delta);
            return {a, b};
        }
        default:
            throw std::invalid_argument("no closed form implemented for N = " + std::to_string(geom.n_layers()) +
                                        " layers (available for N <= 4)");
    }
}

}  // namespace nestres
