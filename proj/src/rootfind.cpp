#include "nestres/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include <spdlog/spdlog.h>

#include "nestres/asymptotics.hpp"

namespace nestres {

namespace {

// Brings three scaled values onto a common power of two. Muller's update is
// invariant under a common factor, so no information is lost.
std::array<Complex, 3> common_scale(const std::array<ScaledDeterminant, 3>& f) {
    long ref = std::numeric_limits<long>::min();
    for (const auto& v : f)
        if (!v.is_zero()) ref = std::max(ref, v.exponent());
    if (ref == std::numeric_limits<long>::min()) ref = 0;
    return {f[0].scaled_value(ref), f[1].scaled_value(ref), f[2].scaled_value(ref)};
}

bool finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// omega^(2N) f(omega): same roots off the origin, without the steep omega^(-2N) background
// that otherwise stalls Muller at the low end of the window.
ScaledDeterminant compensated(const DispersionFunction& f, Complex omega) {
    ScaledDeterminant v = f(omega);
    const auto layers = f.geometry().n_layers();
    for (std::size_t i = 0; i < 2 * layers; ++i) v *= omega;
    return v;
}

ScaledDeterminant deflated(const DispersionFunction& f, const std::vector<ResonanceRoot>& accepted, Complex omega) {
    ScaledDeterminant v = compensated(f, omega);
    for (const auto& r : accepted) {
        v /= (omega - r.omega);
        v /= (omega + std::conj(r.omega));
    }
    return v;
}

}  // namespace

void SearchConfig::validate() const {
    if (grid_points < 64) throw std::invalid_argument("grid_points must be at least 64");
    if (!(tol_abs > 0.0) || !(tol_rel > 0.0)) throw std::invalid_argument("tolerances must be positive");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be positive");
    if (!(verify_tol > 0.0)) throw std::invalid_argument("verify_tol must be positive");
    if (!std::isfinite(omega_max) || !std::isfinite(imag_seed_offset))
        throw std::invalid_argument("search window parameters must be finite");
}

ShortfallError::ShortfallError(std::vector<ResonanceRoot> found_roots, std::size_t expected_count)
    : std::runtime_error("found " + std::to_string(found_roots.size()) + " of " + std::to_string(expected_count) +
                         " expected subwavelength roots"),
      found(std::move(found_roots)),
      expected(expected_count) {}

ResonanceRoot muller(const AnalyticFn& f, std::array<Complex, 3> seeds, const SearchConfig& cfg, double window) {
    if (seeds[0] == seeds[1] || seeds[1] == seeds[2] || seeds[0] == seeds[2])
        throw std::invalid_argument("Muller needs three distinct seeds");

    auto x = seeds;
    // Iterates landing exactly on the Hankel pole are nudged off it.
    auto safe_eval = [&](Complex& z) {
        if (z == Complex{0.0, 0.0}) z = Complex{cfg.tol_abs, -cfg.tol_abs};
        return f(z);
    };
    std::array<ScaledDeterminant, 3> fx = {safe_eval(x[0]), safe_eval(x[1]), safe_eval(x[2])};

    for (int it = 1; it <= cfg.max_iter; ++it) {
        for (int k = 0; k < 3; ++k) {
            if (fx[k].is_zero()) {
                ResonanceRoot root{x[k], 0.0, it - 1, seeds[2]};
                root.residual = verify_root(f, root.omega, cfg.verify_tol).residual;
                return root;
            }
        }
        const auto [f0, f1, f2] = common_scale(fx);
        const Complex h1 = x[1] - x[0];
        const Complex h2 = x[2] - x[1];
        const Complex d1 = (f1 - f0) / h1;
        const Complex d2 = (f2 - f1) / h2;
        const Complex a = (d2 - d1) / (h2 + h1);
        const Complex b = a * h2 + d2;
        const Complex disc = std::sqrt(b * b - 4.0 * a * f2);
        const Complex den = std::abs(b + disc) >= std::abs(b - disc) ? b + disc : b - disc;

        Complex step;
        if (den == Complex{0.0, 0.0} || !finite(den)) {
            // Degenerate parabola: perturb rather than stall.
            step = h2 == Complex{0.0, 0.0} ? Complex{cfg.tol_abs, 0.0} : 0.5 * h2;
        } else {
            step = -2.0 * f2 / den;
        }
        if (!finite(step)) throw ConvergenceError("Muller iteration produced a non-finite step");

        Complex next = x[2] + step;
        if (std::abs(next) > window) {
            throw ConvergenceError("Muller iterate left the search window (|omega| = " + std::to_string(std::abs(next)) +
                                   ")");
        }
        x = {x[1], x[2], next};
        fx = {fx[1], fx[2], safe_eval(x[2])};

        if (std::abs(step) <= cfg.tol_abs + cfg.tol_rel * std::abs(x[2]) || fx[2].is_zero()) {
            ResonanceRoot root{x[2], 0.0, it, seeds[2]};
            root.residual = verify_root(f, root.omega, cfg.verify_tol).residual;
            return root;
        }
    }
    throw ConvergenceError("Muller iteration did not converge in " + std::to_string(cfg.max_iter) + " steps");
}

RootCheck verify_root(const AnalyticFn& f, Complex omega, double tolerance) {
    if (omega == Complex{0.0, 0.0}) throw std::domain_error("cannot verify a root at omega = 0");
    constexpr int kPoints = 16;
    const double radius = std::abs(omega) * 1e-2;
    std::vector<double> ring;
    ring.reserve(kPoints);
    for (int k = 0; k < kPoints; ++k) {
        const double t = 2.0 * std::numbers::pi * (k + 0.5) / kPoints;
        ring.push_back(f(omega + std::polar(radius, t)).log_abs());
    }
    std::sort(ring.begin(), ring.end());
    const double median = 0.5 * (ring[kPoints / 2 - 1] + ring[kPoints / 2]);
    const double here = f(omega).log_abs();
    const double residual = std::exp(here - median);
    return {residual <= tolerance, residual};
}

double default_omega_max(const LayeredGeometry& geom, const MediumSpec& medium) {
    const double r1 = geom.radius(1);
    const double r2 = geom.n_layers() >= 2 ? geom.radius(2) : 0.0;
    const double nr = static_cast<double>(geom.n_resonators());
    return 8.0 * medium.v_r * std::sqrt(3.0 * medium.delta) * std::sqrt(r1 / (r1 * r1 * r1 - r2 * r2 * r2)) *
           std::sqrt(nr);
}

std::vector<double> scan_profile(const DispersionFunction& f, double omega_max, int points) {
    std::vector<double> out(static_cast<std::size_t>(points));
    const double background = 2.0 * static_cast<double>(f.geometry().n_layers());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double w = omega_max * static_cast<double>(i + 1) / points;
            const double v = f(Complex{w, 0.0}).log_abs() + background * std::log(w);
            out[i] = std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
        }
    };
    const std::size_t n = out.size();
    const std::size_t threads = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
    if (threads == 1 || n < 256) {
        work(0, n);
        return out;
    }
    {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (n + threads - 1) / threads;
        for (std::size_t t = 0; t < threads; ++t) {
            const std::size_t b = t * chunk;
            const std::size_t e = std::min(n, b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
    }
    return out;
}

RootSearchResult find_subwavelength_roots(const LayeredGeometry& geom, const MediumSpec& medium, int n,
                                          const SearchConfig& cfg) {
    cfg.validate();
    const DispersionFunction f(geom, medium, n);
    const std::size_t expected = geom.n_resonators();
    const double offset = cfg.imag_seed_offset > 0.0 ? cfg.imag_seed_offset : medium.delta;

    RootSearchResult result;
    result.omega_max = cfg.omega_max > 0.0 ? cfg.omega_max : default_omega_max(geom, medium);
    std::vector<ResonanceRoot> accepted;

    auto is_duplicate = [&](Complex w) {
        return std::any_of(accepted.begin(), accepted.end(),
                           [&](const ResonanceRoot& r) { return std::abs(r.omega - w) <= 10.0 * cfg.tol_abs; });
    };

    // Polishes one seed against the deflated function, then once more against f itself.
    auto polish = [&](Complex seed, Complex spread, double window) {
        const std::vector<ResonanceRoot> snapshot = accepted;
        const AnalyticFn g = [&f, &snapshot](Complex w) { return deflated(f, snapshot, w); };
        const AnalyticFn plain = [&f](Complex w) { return compensated(f, w); };
        ResonanceRoot root;
        try {
            root = muller(g, {seed - spread, seed + spread, seed}, cfg, 10.0 * window);
        } catch (const ConvergenceError& e) {
            spdlog::debug("seed {:.6g}{:+.6g}i rejected: {}", seed.real(), seed.imag(), e.what());
            return;
        }
        try {
            const Complex w = root.omega;
            const Complex h = w * 1e-7;
            ResonanceRoot refined = muller(plain, {w - h, w + h, w}, cfg, 10.0 * window);
            if (std::abs(refined.omega - w) <= 1e-6 * std::abs(w)) {
                root.omega = refined.omega;
                root.iterations += refined.iterations;
            }
        } catch (const ConvergenceError&) {
            // keep the deflated estimate
        }
        root.seed = seed;

        const Complex w = root.omega;
        if (!(w.real() > 0.0) || w.real() > window || w.imag() > 0.0) {
            spdlog::debug("root {:.10g}{:+.10g}i outside the accepted region", w.real(), w.imag());
            return;
        }
        if (is_duplicate(w)) {
            ++result.duplicates_merged;
            return;
        }
        const RootCheck check = verify_root(plain, w, cfg.verify_tol);
        root.residual = check.residual;
        if (!check.ok) {
            spdlog::debug("root {:.10g}{:+.10g}i failed verification (residual {:.3g})", w.real(), w.imag(),
                          check.residual);
            return;
        }
        spdlog::debug("accepted root {:.12g}{:+.12g}i after {} iterations", w.real(), w.imag(), root.iterations);
        accepted.push_back(root);
    };

    auto search = [&](double window, int points) {
        const std::vector<double> profile = scan_profile(f, window, points);
        const double h = window / points;

        // Closed-form seeds go first; grid minima next to an accepted root are already explained.
        if (geom.n_layers() <= 4) {
            for (const auto& a : asymptotic_frequencies(geom, medium)) {
                if (a.omega.real() <= window) polish(a.omega, a.omega * 1e-3, window);
            }
        }
        std::vector<double> minima;
        for (std::size_t i = 1; i + 1 < profile.size(); ++i) {
            if (profile[i] < profile[i - 1] && profile[i] < profile[i + 1]) minima.push_back(h * (i + 1));
        }
        spdlog::debug("scan of (0, {:.6g}] with {} points: {} local minima", window, points, minima.size());
        for (double m : minima) {
            const bool explained = std::any_of(accepted.begin(), accepted.end(), [&](const ResonanceRoot& r) {
                return std::abs(r.omega.real() - m) <= 2.0 * h;
            });
            if (!explained) polish(Complex{m, -offset}, Complex{h, 0.0}, window);
        }
    };

    search(result.omega_max, cfg.grid_points);
    if (accepted.size() < expected) {
        spdlog::info("found {} of {} roots; doubling the scan window", accepted.size(), expected);
        result.omega_max *= 2.0;
        result.window_expanded = true;
        search(result.omega_max, 2 * cfg.grid_points);
    }

    std::sort(accepted.begin(), accepted.end(),
              [](const ResonanceRoot& a, const ResonanceRoot& b) { return a.omega.real() < b.omega.real(); });
    if (accepted.size() < expected) throw ShortfallError(std::move(accepted), expected);
    result.roots = std::move(accepted);
    return result;
}

}  // namespace nestres
