#include "selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "nestres/asymptotics.hpp"
#include "nestres/dispersion.hpp"
#include "nestres/modes.hpp"
#include "nestres/rootfind.hpp"
#include "nestres/specfun.hpp"
#include "writers.hpp"

namespace nestres::cli {

namespace {

constexpr std::uint64_t kSeed = 20240611;

double rel(Complex got, Complex want) {
    const double scale = std::abs(want);
    return scale > 0.0 ? std::abs(got - want) / scale : std::abs(got);
}

// Tracks the worst value seen and whether it ever exceeded the bound.
struct Worst {
    explicit Worst(double b) : bound(b) {}
    double bound;
    double value = 0.0;
    std::string where;
    void see(double v, const std::string& at) {
        if (!(v <= value) || std::isnan(v)) {
            value = v;
            where = at;
        }
    }
    [[nodiscard]] bool ok() const { return value <= bound; }
    [[nodiscard]] std::string detail() const {
        return ok() ? fmt::format("max {:.3g} (bound {:.0e})", value, bound)
                    : fmt::format("{:.3g} exceeds {:.0e} at {}", value, bound, where);
    }
};

Complex cofactor_det(const ComplexMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 1) return m(0, 0);
    Complex acc = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        if (m(0, c) == Complex{0.0, 0.0}) continue;
        ComplexMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0, jj = 0; j < n; ++j)
                if (j != c) minor(i - 1, jj++) = m(i, j);
        acc += (c % 2 == 0 ? 1.0 : -1.0) * m(0, c) * cofactor_det(minor);
    }
    return acc;
}

// Moduli 1e-3..50 over the closed upper half-plane, plus a lower strip |Im z| <= 1. Deeper in the
// lower half-plane both j_n and h_n grow like exp|Im z| and the identity cancels catastrophically.
std::vector<Complex> wronskian_grid() {
    std::vector<Complex> out;
    for (int m = 0; m <= 24; ++m) {
        const double mod = 1e-3 * std::pow(5e4, m / 24.0);
        for (int a = 0; a <= 12; ++a) out.push_back(std::polar(mod, std::numbers::pi * a / 12));
        for (double y : {0.01, 0.1, 1.0})
            if (y < mod) {
                const double x = std::sqrt(mod * mod - y * y);
                out.emplace_back(x, -y);
                out.emplace_back(-x, -y);
            }
    }
    return out;
}

class Runner {
public:
    void check(const std::string& suite, const std::string& name, const std::function<std::string(bool&)>& body) {
        CheckResult r{suite, name, false, ""};
        try {
            bool ok = true;
            r.detail = body(ok);
            r.passed = ok;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        results.push_back(std::move(r));
    }
    std::vector<CheckResult> results;
};

void specfun_suite(Runner& run) {
    run.check("specfun", "wronskian", [](bool& ok) {
        Worst w{1e-11};
        for (int n = 0; n <= 8; ++n)
            for (const Complex z : wronskian_grid()) {
                const Complex wr =
                    sph_bessel_j(n, z) * sph_hankel1_prime(n, z) - sph_bessel_j_prime(n, z) * sph_hankel1(n, z);
                w.see(rel(wr, Complex{0.0, 1.0} / (z * z)), fmt::format("n={} z={}", n, fmt_complex(z)));
            }
        ok = w.ok();
        return w.detail();
    });
    run.check("specfun", "j0_closed_form", [](bool& ok) {
        Worst w{1e-13};
        for (int m = 0; m <= 30; ++m) {
            const double mod = 1e-2 * std::pow(5e3, m / 30.0);
            for (int a = 0; a < 8; ++a) {
                const Complex z = std::polar(mod, 2.0 * std::numbers::pi * a / 8 + 0.1);
                const Complex ref = std::sin(z) / z;
                w.see(std::abs(sph_bessel_j(0, z) - ref) / std::max(1.0, std::abs(ref)), fmt_complex(z));
            }
        }
        ok = w.ok();
        return w.detail();
    });
    run.check("specfun", "series_switch_continuity", [](bool& ok) {
        Worst w{1e-13};
        for (int a = 0; a < 16; ++a) {
            const Complex z = std::polar(detail::kJ0SeriesRadius, 2.0 * std::numbers::pi * a / 16);
            w.see(rel(detail::j0_series(z), detail::j0_closed(z)), fmt_complex(z));
            w.see(rel(sph_bessel_j(0, z * (1.0 - 1e-12)), sph_bessel_j(0, z * (1.0 + 1e-12))), fmt_complex(z));
        }
        ok = w.ok();
        return w.detail();
    });
    run.check("specfun", "order0_parity", [](bool& ok) {
        Worst w{1e-13};
        std::mt19937_64 rng(kSeed);
        std::uniform_real_distribution<double> u(-20.0, 20.0);
        for (int i = 0; i < 200; ++i) {
            const Complex z{u(rng), 0.25 * u(rng)};
            w.see(rel(sph_bessel_j(0, -z), sph_bessel_j(0, z)), fmt_complex(z));
            w.see(rel(sph_hankel1(0, -std::conj(z)), std::conj(sph_hankel1(0, z))), fmt_complex(z));
        }
        ok = w.ok();
        return w.detail();
    });
}

void medium_suite(Runner& run) {
    run.check("medium", "resonator_count", [](bool& ok) {
        for (int n = 1; n <= 60; ++n) {
            if (geometry_equidistant(n).n_resonators() != static_cast<std::size_t>((n + 1) / 2)) {
                ok = false;
                return fmt::format("N={} gives {}", n, geometry_equidistant(n).n_resonators());
            }
        }
        return std::string("N = 1..60");
    });
    run.check("medium", "joint_rescaling", [](bool& ok) {
        Worst w{1e-14};
        const MediumSpec base = make_medium(2.0, 8.0, 1000.0, 500.0);
        for (double c : {1e-3, 0.7, 3.0, 1e4}) {
            const MediumSpec a = make_medium(2.0 * c, 8.0, 1000.0 * c, 500.0);
            const MediumSpec b = make_medium(2.0, 8.0 * c, 1000.0, 500.0 * c);
            for (const auto& m : {a, b}) {
                w.see(std::abs(m.tau - base.tau) / base.tau, fmt::format("c={}", c));
                w.see(std::abs(m.delta - base.delta) / base.delta, fmt::format("c={}", c));
            }
        }
        ok = w.ok();
        return w.detail();
    });
    run.check("medium", "monotone_radii", [](bool& ok) {
        for (int n = 1; n <= 50; ++n) {
            for (const auto& g : {geometry_equidistant(n), geometry_geometric(n, n, 0.8)}) {
                const auto r = g.radii();
                for (std::size_t i = 1; i < r.size(); ++i)
                    if (!(r[i] < r[i - 1])) {
                        ok = false;
                        return fmt::format("N={} not decreasing at {}", n, i);
                    }
            }
        }
        for (const auto& bad : std::vector<std::vector<double>>{{1.0, 2.0}, {3.0, 3.0}, {2.0, -1.0}, {}}) {
            try {
                LayeredGeometry g(bad);
                ok = false;
                return std::string("a non-monotone radius list was accepted");
            } catch (const std::invalid_argument&) {
            }
        }
        return std::string("constructors decreasing; invalid lists rejected");
    });
}

void dispersion_suite(Runner& run) {
    run.check("dispersion", "block_sparsity", [](bool& ok) {
        const LayeredGeometry g = geometry_equidistant(5);
        const auto A = assemble(g, medium_from_delta(1e-3), Complex{0.013, -0.002});
        const std::size_t n = A.entries.rows();
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                const long bi = static_cast<long>(r / 2);
                const long bj = static_cast<long>(c / 2);
                bool allowed = std::abs(bi - bj) <= 1;
                if (bj == bi + 1 && c % 2 == 1) allowed = false;  // R block: b column empty
                if (bj == bi - 1 && c % 2 == 0) allowed = false;  // L block: a column empty
                if (!allowed && A.entries(r, c) != Complex{0.0, 0.0}) {
                    ok = false;
                    return fmt::format("unexpected nonzero at ({}, {})", r, c);
                }
            }
        }
        return fmt::format("{}x{} pattern matches", n, n);
    });
    run.check("dispersion", "conjugation_symmetry", [](bool& ok) {
        Worst w{1e-10};
        std::mt19937_64 rng(kSeed + 1);
        std::uniform_real_distribution<double> u(-3.0, 0.0);
        std::uniform_real_distribution<double> ph(-std::numbers::pi / 2, std::numbers::pi / 2);
        for (int n = 1; n <= 6; ++n) {
            const DispersionFunction f(geometry_equidistant(n), medium_from_delta(1e-3), 0);
            for (int i = 0; i < 20; ++i) {
                const Complex w0 = std::polar(std::pow(10.0, u(rng)), ph(rng));
                const ScaledDeterminant a = f(w0);
                const ScaledDeterminant b = f(-std::conj(w0));
                const long e = std::max(a.exponent(), b.exponent());
                // each derivative row flips sign under w -> -conj(w)
                const double sign = n % 2 == 0 ? 1.0 : -1.0;
                w.see(rel(b.scaled_value(e), sign * std::conj(a.scaled_value(e))), fmt::format("N={} w={}", n, fmt_complex(w0)));
            }
        }
        ok = w.ok();
        return w.detail();
    });
    run.check("dispersion", "cofactor_oracle", [](bool& ok) {
        Worst w{1e-12};
        std::mt19937_64 rng(kSeed + 2);
        std::uniform_real_distribution<double> lg(-3.0, 0.0);
        std::uniform_real_distribution<double> ph(-std::numbers::pi, std::numbers::pi);
        for (int n = 1; n <= 3; ++n) {
            const LayeredGeometry g = geometry_equidistant(n);
            const MediumSpec m = medium_from_delta(1e-2);
            for (int i = 0; i < 30; ++i) {
                const Complex w0 = std::polar(std::pow(10.0, lg(rng)), ph(rng));
                const auto A = assemble(g, m, w0);
                w.see(rel(scaled_det(A).value(), cofactor_det(A.entries)), fmt::format("N={} w={}", n, fmt_complex(w0)));
            }
        }
        ok = w.ok();
        return w.detail();
    });
    run.check("dispersion", "bit_stable", [](bool& ok) {
        const DispersionFunction f(geometry_equidistant(8), medium_from_delta(1e-4), 0);
        const Complex w0{0.0123, -0.0004};
        const ScaledDeterminant a = f(w0);
        const ScaledDeterminant b = f(w0);
        ok = a.mantissa() == b.mantissa() && a.exponent() == b.exponent();
        return ok ? std::string("repeat evaluation identical") : std::string("repeat evaluation differs");
    });
}

void rootfind_suite(Runner& run) {
    run.check("rootfind", "root_count_and_signs", [](bool& ok) {
        std::string bad;
        for (double delta : {1e-3, 1e-4}) {
            for (int n = 1; n <= 8; ++n) {
                const LayeredGeometry g = geometry_equidistant(n);
                const MediumSpec m = medium_from_delta(delta);
                const auto res = find_subwavelength_roots(g, m, 0, SearchConfig{});
                if (res.roots.size() != g.n_resonators()) bad = fmt::format("N={} delta={}: {} roots", n, delta, res.roots.size());
                for (const auto& r : res.roots)
                    if (!(r.omega.real() > 0.0) || r.omega.imag() > 0.0)
                        bad = fmt::format("N={} delta={}: root {} has a bad sign", n, delta, fmt_complex(r.omega));
            }
        }
        ok = bad.empty();
        return ok ? std::string("N = 1..8 at delta 1e-3, 1e-4") : bad;
    });
    run.check("rootfind", "mirror_symmetry", [](bool& ok) {
        const LayeredGeometry g = geometry_equidistant(6);
        const MediumSpec m = medium_from_delta(1e-3);
        const SearchConfig cfg;
        const DispersionFunction f(g, m, 0);
        const AnalyticFn fn = [&f](Complex w) { return f(w); };
        Worst w{cfg.verify_tol};
        for (const auto& r : find_subwavelength_roots(g, m, 0, cfg).roots)
            w.see(verify_root(fn, -std::conj(r.omega), cfg.verify_tol).residual, fmt_complex(r.omega));
        ok = w.ok();
        return w.detail();
    });
    run.check("rootfind", "scaling_law", [](bool& ok) {
        const LayeredGeometry g({1.0});
        const double limit = std::sqrt(3.0);
        double prev = std::numeric_limits<double>::infinity();
        std::string trace;
        for (double delta : {1e-3, 1e-4, 1e-5}) {
            const auto res = find_subwavelength_roots(g, medium_from_delta(delta), 0, SearchConfig{});
            const double dev = std::abs(res.roots.at(0).omega.real() / std::sqrt(delta) - limit);
            trace += fmt::format("{:.3g} ", dev);
            if (!(dev < prev)) ok = false;
            prev = dev;
        }
        return "deviation " + trace;
    });
    run.check("rootfind", "determinism", [](bool& ok) {
        const LayeredGeometry g = geometry_geometric(7, 7.0, 0.8);
        const MediumSpec m = medium_from_delta(1.0 / 6000);
        const auto a = find_subwavelength_roots(g, m, 0, SearchConfig{});
        const auto b = find_subwavelength_roots(g, m, 0, SearchConfig{});
        ok = a.roots.size() == b.roots.size();
        for (std::size_t i = 0; ok && i < a.roots.size(); ++i) ok = a.roots[i].omega == b.roots[i].omega;
        return ok ? std::string("identical root lists") : std::string("root lists differ");
    });
}

void asymptotics_suite(Runner& run) {
    run.check("asymptotics", "convergence_order", [](bool& ok) {
        std::string trace;
        const std::vector<std::vector<double>> geoms = {{1.0}, {2.0, 1.0}, {3.0, 2.0, 1.0}, {4.0, 3.0, 2.0, 1.0}};
        for (const auto& radii : geoms) {
            const LayeredGeometry g(radii);
            std::vector<std::vector<double>> ratios(g.n_resonators());
            for (double delta : {1e-3, 1e-4, 1e-5}) {
                const MediumSpec m = medium_from_delta(delta);
                const auto roots = find_subwavelength_roots(g, m, 0, SearchConfig{}).roots;
                const auto formulas = asymptotic_frequencies(g, m);
                for (std::size_t j = 0; j < roots.size(); ++j)
                    ratios[j].push_back(std::abs(formulas.at(j).omega - roots[j].omega) / std::pow(delta, 1.5));
            }
            for (std::size_t j = 0; j < ratios.size(); ++j) {
                const auto [lo, hi] = std::minmax_element(ratios[j].begin(), ratios[j].end());
                const double spread = *hi / *lo;
                trace += fmt::format("N={} branch {}: {:.3f}; ", radii.size(), j + 1, spread);
                if (!(spread < 3.0)) ok = false;
            }
        }
        return trace;
    });
    run.check("asymptotics", "shell_to_solid_limit", [](bool& ok) {
        const MediumSpec m = medium_from_delta(1e-4);
        const auto solid = omega_solid(2.0, m.v_r, m.tau, m.delta);
        const auto shell = omega_shell(2.0, 2e-6, m.v_r, m.tau, m.delta);
        const double err = rel(shell.omega, solid.omega);
        // |w| must shrink steadily as r1 grows at fixed r2
        bool shrinking = true;
        double prev = std::abs(omega_shell(2.0, 1.0, m.v_r, m.tau, m.delta).omega);
        const double first = prev;
        for (double r1 : {1e1, 1e2, 1e3, 1e4}) {
            const double cur = std::abs(omega_shell(r1, 1.0, m.v_r, m.tau, m.delta).omega);
            shrinking = shrinking && cur < prev;
            prev = cur;
        }
        ok = err <= 1e-10 && shrinking && prev < 1e-3 * first;
        return fmt::format("relative gap {:.3g}; |w| ratio r1 = 1e4 vs 2: {:.3g}", err, prev / first);
    });
    run.check("asymptotics", "branch_separation_and_positivity", [](bool& ok) {
        std::mt19937_64 rng(kSeed + 3);
        std::uniform_real_distribution<double> u(0.05, 1.0);
        const MediumSpec m = medium_from_delta(1e-4);
        for (int i = 0; i < 200; ++i) {
            double r[4] = {u(rng), u(rng), u(rng), u(rng)};
            std::sort(r, r + 4, std::greater<>());
            if (r[0] - r[1] < 1e-3 || r[1] - r[2] < 1e-3 || r[2] - r[3] < 1e-3) continue;
            const auto [a1, a2] = omega_dual3(r[0], r[1], r[2], m.v_r, m.tau, m.delta);
            const auto [b1, b2] = omega_dual4(r[0], r[1], r[2], r[3], m.v_r, m.tau, m.delta);
            if (!(a1.leading > 0.0 && b1.leading > 0.0 && a2.omega.real() > a1.omega.real() &&
                  b2.omega.real() > b1.omega.real())) {
                ok = false;
                return fmt::format("radii ({}, {}, {}, {})", r[0], r[1], r[2], r[3]);
            }
        }
        return std::string("200 random radius sets");
    });
    run.check("asymptotics", "general_single_consistency", [](bool& ok) {
        Worst w{4.0 * std::numeric_limits<double>::epsilon()};
        const MediumSpec m = medium_from_delta(1e-3);
        for (double r1 : {0.5, 1.0, 3.0}) {
            const auto g = omega_general_single(sphere_capacity(r1), shell_volume(r1, 0.0), m.v_r, m.tau, m.delta);
            w.see(rel(g.omega, omega_solid(r1, m.v_r, m.tau, m.delta).omega), fmt::format("solid r1={}", r1));
            const double r2 = 0.4 * r1;
            const auto s = omega_general_single(sphere_capacity(r1), shell_volume(r1, r2), m.v_r, m.tau, m.delta);
            w.see(rel(s.omega, omega_shell(r1, r2, m.v_r, m.tau, m.delta).omega), fmt::format("shell r1={}", r1));
        }
        ok = w.ok();
        return w.detail();
    });
}

void modes_suite(Runner& run) {
    const LayeredGeometry g = geometry_equidistant(8);
    const MediumSpec m = medium_from_delta(1.0 / 6000);
    std::vector<ModeProfile> modes;
    run.check("modes", "kernel_residual", [&](bool& ok) {
        Worst w{kKernelResidualTol};
        for (const auto& r : find_subwavelength_roots(g, m, 0, SearchConfig{}).roots) {
            modes.push_back(make_mode(g, m, r.omega));
            w.see(modes.back().kernel_residual, fmt_complex(r.omega));
        }
        ok = w.ok() && modes.size() == 4;
        return w.detail();
    });
    run.check("modes", "interface_continuity", [&](bool& ok) {
        Worst w{1e-8};
        for (const auto& p : modes) {
            for (std::size_t i = 1; i <= g.n_layers(); ++i) {
                const double r = g.radius(i);
                const Complex uo = field_in_region(p, i - 1, r);
                const Complex ui = field_in_region(p, i, r);
                const Complex fo = flux_in_region(p, i - 1, r);
                const Complex fi = flux_in_region(p, i, r);
                w.see(std::abs(uo - ui) / std::max(std::abs(uo), std::abs(ui)), fmt::format("field at r_{}", i));
                w.see(std::abs(fo - fi) / std::max(std::abs(fo), std::abs(fi)), fmt::format("flux at r_{}", i));
            }
        }
        ok = w.ok() && !modes.empty();
        return w.detail();
    });
    run.check("modes", "normalization", [&](bool& ok) {
        Worst unit{1e-8};
        Worst doubling{1e-10};
        for (const auto& p : modes) {
            const double m32 = resonator_mass(p, 32);
            unit.see(std::abs(m32 - 1.0), fmt_complex(p.omega));
            doubling.see(std::abs(resonator_mass(p, 64) - m32), fmt_complex(p.omega));
        }
        ok = unit.ok() && doubling.ok() && !modes.empty();
        return "unit " + unit.detail() + "; doubling " + doubling.detail();
    });
    run.check("modes", "plane_radial_exactness", [&](bool& ok) {
        if (modes.empty()) {
            ok = false;
            return std::string("no modes");
        }
        const PlaneSamples s = sample_plane(modes.front(), 1.1 * g.radius(1), 41);
        for (int iy = 0; iy < s.resolution; ++iy)
            for (int ix = 0; ix < s.resolution; ++ix) {
                const int mx = s.resolution - 1 - ix;
                if (s.at(ix, iy) != s.at(mx, iy) || s.at(ix, iy) != s.at(iy, ix)) {
                    ok = false;
                    return fmt::format("asymmetric cell ({}, {})", ix, iy);
                }
            }
        return std::string("mirror and transpose symmetric bit-exactly");
    });
}

}  // namespace

std::vector<CheckResult> run_selftest() {
    Runner run;
    specfun_suite(run);
    medium_suite(run);
    dispersion_suite(run);
    rootfind_suite(run);
    asymptotics_suite(run);
    modes_suite(run);
    return run.results;
}

nlohmann::json selftest_json(const std::vector<CheckResult>& results) {
    auto checks = nlohmann::json::array();
    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed;
        checks.push_back({{"suite", r.suite}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
    return {{"passed", all}, {"checks", checks}};
}

}  // namespace nestres::cli
