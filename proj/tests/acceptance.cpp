// Acceptance criteria: one PASS/FAIL line each, nonzero exit if any fails.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include <fmt/format.h>

#include "nestres/asymptotics.hpp"
#include "nestres/dispersion.hpp"
#include "nestres/modes.hpp"
#include "nestres/rootfind.hpp"
#include "nestres/specfun.hpp"
#include "oracles.hpp"
#include "table1.hpp"

using namespace nestres;

namespace {

// pinned tolerances
constexpr double kMirrorVerifyTol = 1e-6;
constexpr double kConvergenceSpread = 3.0;
constexpr double kShellSolidRel = 1e-10;
constexpr double kGeneralSingleRel = 4.0 * 2.220446049250313e-16;
constexpr double kWronskianRel = 1e-11;
constexpr double kSeriesTruncation = 1e-9;  // |z|^8 / 9! at |z| = 0.1 is 2.8e-14; leave room for rounding
constexpr double kKernelResidual = 1e-10;
constexpr double kContinuityRel = 1e-8;
constexpr double kMassTol = 1e-8;
constexpr double kCofactorRel = 1e-12;
constexpr std::uint64_t kSeed = 977;

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

struct Outcome {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body) {
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.ok) ++failures;
    std::printf("%s %d %s: %s\n", o.ok ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str());
    std::fflush(stdout);
}

Outcome table_one() {
    const auto rep = cli::run_table1();
    return {rep.ok(), rep.ok() ? fmt::format("{} rows within {:.0e} / {:.0e}%", rep.rows.size(), cli::kTable1FreqTol,
                                             cli::kTable1PctTol)
                               : rep.mismatches.front()};
}

Outcome fifty_layers() {
    const LayeredGeometry g = geometry_equidistant(50);
    const MediumSpec m = medium_from_delta(1.0 / 6000);
    const auto res = find_subwavelength_roots(g, m, 0, SearchConfig{});
    const DispersionFunction f(g, m);
    const AnalyticFn fn = [&f](Complex w) { return f(w); };
    Outcome o{res.roots.size() == 25, ""};
    double worst = 0.0;
    for (const auto& r : res.roots) {
        if (!(r.omega.real() > 0.0 && r.omega.imag() <= 0.0)) o.ok = false;
        const RootCheck c = verify_root(fn, -std::conj(r.omega), kMirrorVerifyTol);
        worst = std::max(worst, c.residual);
        if (!c.ok) o.ok = false;
    }
    o.detail = fmt::format("{} roots, worst mirror residual {:.2e}", res.roots.size(), worst);
    return o;
}

Outcome convergence() {
    Outcome o;
    double worst = 0.0;
    const std::vector<std::vector<double>> geoms = {{1.0}, {2.0, 1.0}, {3.0, 2.0, 1.0}, {4.0, 3.0, 2.0, 1.0}};
    for (const auto& radii : geoms) {
        const LayeredGeometry g(radii);
        std::vector<std::vector<double>> ratios(g.n_resonators());
        for (double delta : {1e-3, 1e-4, 1e-5}) {
            const MediumSpec m = medium_from_delta(delta);
            const auto roots = find_subwavelength_roots(g, m, 0, SearchConfig{}).roots;
            const auto formulas = asymptotic_frequencies(g, m);
            for (std::size_t j = 0; j < ratios.size(); ++j)
                ratios[j].push_back(std::abs(formulas.at(j).omega - roots.at(j).omega) / std::pow(delta, 1.5));
        }
        for (const auto& r : ratios) {
            const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
            worst = std::max(worst, *hi / *lo);
        }
    }
    o.ok = worst < kConvergenceSpread;
    o.detail = fmt::format("worst delta^1.5 ratio spread {:.4f} (bound {})", worst, kConvergenceSpread);
    return o;
}

Outcome limits() {
    const MediumSpec m = medium_from_delta(1e-4);
    const auto solid = omega_solid(2.0, m.v_r, m.tau, m.delta);
    const auto shell = omega_shell(2.0, 2e-6, m.v_r, m.tau, m.delta);
    const double gap = rel(shell.omega, solid.omega);
    const double r1 = 2.0;
    const auto gen = omega_general_single(4.0 * std::numbers::pi * r1, 4.0 * std::numbers::pi * r1 * r1 * r1 / 3.0,
                                          m.v_r, m.tau, m.delta);
    const double ge = std::max(std::abs(gen.omega.real() - solid.omega.real()) / solid.omega.real(),
                               std::abs(gen.omega.imag() - solid.omega.imag()) / std::abs(solid.omega.imag()));
    return {gap < kShellSolidRel && ge <= kGeneralSingleRel,
            fmt::format("shell->solid {:.2e}, general vs solid {:.2e}", gap, ge)};
}

Outcome hybridization() {
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    int tested = 0;
    int held = 0;
    while (tested < 100) {
        double r[4] = {u(rng), u(rng), u(rng), u(rng)};
        std::sort(r, r + 4, std::greater<>());
        if (r[0] - r[1] < 1e-3 || r[1] - r[2] < 1e-3 || r[2] - r[3] < 1e-3) continue;
        const auto rep = hybridization_check(r[0], r[1], r[2], r[3], medium_from_delta(1e-4));
        if (!rep.precondition_met) continue;
        ++tested;
        if (rep.ordering_holds.value_or(false)) ++held;
    }
    return {held == tested, fmt::format("ordering held for {}/{} CVR-ordered quadruples", held, tested)};
}

Outcome special_functions() {
    double worst = 0.0;
    for (int m = 0; m <= 24; ++m) {
        const double mod = 1e-3 * std::pow(5e4, m / 24.0);
        std::vector<Complex> pts;
        for (int a = 0; a <= 12; ++a) pts.push_back(std::polar(mod, std::numbers::pi * a / 12));
        for (double y : {0.01, 0.1, 1.0})
            if (y < mod) {
                const double x = std::sqrt(mod * mod - y * y);
                pts.emplace_back(x, -y);
                pts.emplace_back(-x, -y);
            }
        for (int n = 0; n <= 8; ++n)
            for (const Complex z : pts) {
                const Complex w = sph_bessel_j(n, z) * sph_hankel1_prime(n, z) - sph_bessel_j_prime(n, z) * sph_hankel1(n, z);
                worst = std::max(worst, rel(w, Complex{0.0, 1.0} / (z * z)));
            }
    }
    // small-argument expansions at t = 0.1 against the truncated series
    const double t = 0.1;
    const double j0_ref = 1.0 - t * t / 6.0 + std::pow(t, 4) / 120.0 - std::pow(t, 6) / 5040.0;
    const double y0_ref = -(1.0 / t - t / 2.0 + std::pow(t, 3) / 24.0 - std::pow(t, 5) / 720.0);
    const double ej = std::abs(sph_bessel_j(0, Complex{t, 0.0}).real() - j0_ref);
    const Complex h = sph_hankel1(0, Complex{t, 0.0});
    const double eh = std::abs(h - Complex{j0_ref, y0_ref});
    return {worst < kWronskianRel && ej < kSeriesTruncation && eh < kSeriesTruncation * 10.0,
            fmt::format("Wronskian {:.2e}, j0 series {:.1e}, h0 series {:.1e}", worst, ej, eh)};
}

Outcome modes() {
    Outcome o;
    double worst_res = 0.0, worst_cont = 0.0, worst_mass = 0.0;
    const MediumSpec m = medium_from_delta(1.0 / 6000);
    for (const LayeredGeometry& g : {geometry_equidistant(8), geometry_geometric(7, 7.0, 0.8)}) {
        const auto roots = find_subwavelength_roots(g, m, 0, SearchConfig{}).roots;
        if (roots.size() != 4) o.ok = false;
        for (const auto& r : roots) {
            const ModeProfile p = make_mode(g, m, r.omega);
            worst_res = std::max(worst_res, p.kernel_residual);
            worst_mass = std::max(worst_mass, std::abs(resonator_mass(p) - 1.0));
            for (std::size_t i = 1; i <= g.n_layers(); ++i) {
                const double rr = g.radius(i);
                const Complex a = field_in_region(p, i - 1, rr), b = field_in_region(p, i, rr);
                const Complex fa = flux_in_region(p, i - 1, rr), fb = flux_in_region(p, i, rr);
                worst_cont = std::max(worst_cont, std::abs(a - b) / std::max(std::abs(a), std::abs(b)));
                worst_cont = std::max(worst_cont, std::abs(fa - fb) / std::max(std::abs(fa), std::abs(fb)));
            }
        }
    }
    // flatness shrinks with contrast
    const LayeredGeometry g3({3.0, 2.0, 1.0});
    std::vector<double> prev;
    bool monotone = true;
    for (double delta : {1e-2, 1e-3, 1e-4}) {
        const MediumSpec md = medium_from_delta(delta);
        std::vector<double> cur;
        for (const auto& r : find_subwavelength_roots(g3, md, 0, SearchConfig{}).roots)
            for (const auto& f : flatness(make_mode(g3, md, r.omega))) cur.push_back(f.variation);
        if (!prev.empty())
            for (std::size_t i = 0; i < cur.size() && i < prev.size(); ++i)
                if (!(cur[i] < prev[i])) monotone = false;
        prev = cur;
    }
    o.ok = o.ok && worst_res <= kKernelResidual && worst_cont <= kContinuityRel && worst_mass <= kMassTol && monotone;
    o.detail = fmt::format("kernel {:.1e}, continuity {:.1e}, mass {:.1e}, flatness monotone {}", worst_res, worst_cont,
                           worst_mass, monotone ? "yes" : "no");
    return o;
}

Outcome cofactor() {
    std::mt19937_64 rng(kSeed + 1);
    std::uniform_real_distribution<double> re(1e-3, 0.3);
    std::uniform_real_distribution<double> im(-0.05, 0.05);
    std::uniform_real_distribution<double> ld(std::log(1e-4), std::log(1e-1));
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 3;
        const MediumSpec md = medium_from_delta(std::exp(ld(rng)));
        const Complex w{re(rng), im(rng)};
        const auto A = assemble(geometry_equidistant(n), md, w);
        oracle::Matrix mat(A.entries.rows(), std::vector<Complex>(A.entries.cols()));
        for (std::size_t i = 0; i < A.entries.rows(); ++i)
            for (std::size_t j = 0; j < A.entries.cols(); ++j) mat[i][j] = A.entries(i, j);
        worst = std::max(worst, rel(scaled_det(A).value(), oracle::cofactor_det(mat)));
    }
    return {worst < kCofactorRel, fmt::format("200 samples, worst relative gap {:.2e}", worst)};
}

}  // namespace

int main() {
    report(1, "table1_regression", table_one);
    report(2, "fifty_layer_count_and_mirrors", fifty_layers);
    report(3, "asymptotic_convergence_order", convergence);
    report(4, "limit_consistency", limits);
    report(5, "hybridization_ordering", hybridization);
    report(6, "special_function_accuracy", special_functions);
    report(7, "mode_integrity", modes);
    report(8, "determinant_cofactor_oracle", cofactor);
    return failures == 0 ? 0 : 1;
}
