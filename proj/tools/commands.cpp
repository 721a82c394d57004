#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <spdlog/spdlog.h>

#include "nestres/asymptotics.hpp"
#include "nestres/modes.hpp"
#include "nestres/rootfind.hpp"
#include "selftest.hpp"
#include "table1.hpp"
#include "writers.hpp"

namespace nestres::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kRadialPoints = 801;
constexpr int kPlaneResolution = 101;

void write_outputs(const RunConfig& cfg, const std::string& command, const std::string& stem, const CsvTable& table,
                   const json& extra = json::object()) {
    const fs::path dir(cfg.out_dir);
    if (cfg.wants(OutputFormat::Csv)) write_text(dir / (stem + ".csv"), table.str());
    if (cfg.wants(OutputFormat::Json)) {
        json doc = json_document(command, cfg.to_json(), table);
        for (const auto& [k, v] : extra.items()) doc[k] = v;
        write_text(dir / (stem + ".json"), doc.dump(2) + "\n");
    }
}

CsvTable spectrum_table(const std::vector<ResonanceRoot>& roots) {
    CsvTable t({"index", "re_omega", "im_omega", "residual", "iterations"});
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const auto& r = roots[i];
        t.add_row({std::to_string(i + 1), fmt_double(r.omega.real()), fmt_double(r.omega.imag()), fmt_double(r.residual),
                   std::to_string(r.iterations)});
    }
    return t;
}

// Complex-plane scatter of the roots and their mirror images -conj(w).
std::string spectrum_svg(const std::vector<ResonanceRoot>& roots, const std::string& title) {
    double re_max = 0.0;
    double im_min = 0.0;
    for (const auto& r : roots) {
        re_max = std::max(re_max, r.omega.real());
        im_min = std::min(im_min, r.omega.imag());
    }
    if (re_max <= 0.0) re_max = 1.0;
    if (im_min >= 0.0) im_min = -0.1 * re_max;
    const double pad_y = 0.1 * std::abs(im_min);
    Svg svg(760, 480);
    const Axis x{-1.1 * re_max, 1.1 * re_max, 90, 730};
    const Axis y{im_min - pad_y, pad_y, 420, 50};
    draw_axes(svg, x, y, "Re ω", "Im ω", title);
    svg.line(x(0.0), y.px_lo, x(0.0), y.px_hi, "#999999", 1.0, "4,3");
    svg.line(x.px_lo, y(0.0), x.px_hi, y(0.0), "#999999", 1.0, "4,3");
    for (const auto& r : roots) {
        svg.circle(x(r.omega.real()), y(r.omega.imag()), 4, "#1f5fbf");
        svg.circle(x(-r.omega.real()), y(r.omega.imag()), 4, "none", "#1f5fbf", 1.2);
    }
    svg.text(730, 70, fmt::format("{} roots (filled), mirrors (open)", roots.size()), 11, "end");
    return svg.str();
}

void print_roots(std::ostream& out, const std::vector<ResonanceRoot>& roots) {
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const auto& r = roots[i];
        fmt::print(out, "{:>4}  {:.12f} {:+.12f}i  residual {:.2e}  iterations {}\n", i + 1, r.omega.real(),
                   r.omega.imag(), r.residual, r.iterations);
    }
}

std::string geometry_label(const LayeredGeometry& g) {
    return fmt::format("N = {}, r1 = {:.4g}, r_N = {:.4g}", g.n_layers(), g.radius(1), g.radius(g.n_layers()));
}

std::string mode_svg(const ModeProfile& p, const RadialSamples& radial, const PlaneSamples& plane, std::size_t index) {
    Svg svg(760, 980);
    const std::string w = fmt_complex(p.omega);

    // Cross-section along the x axis: u(|x|).
    double umin = 0.0;
    double umax = 0.0;
    for (const auto& s : radial.rows) {
        umin = std::min(umin, s.u.real());
        umax = std::max(umax, s.u.real());
    }
    if (umax - umin <= 0.0) umax = umin + 1.0;
    const double pad = 0.08 * (umax - umin);
    const double rmax = radial.rows.back().r;
    const Axis x{-rmax, rmax, 100, 720};
    const Axis y{umin - pad, umax + pad, 420, 60};
    draw_axes(svg, x, y, "x", "Re u", fmt::format("mode {}: ω = {}", index, w));
    std::vector<std::pair<double, double>> pts;
    pts.reserve(2 * radial.rows.size());
    for (auto it = radial.rows.rbegin(); it != radial.rows.rend(); ++it) pts.emplace_back(x(-it->r), y(it->u.real()));
    for (const auto& s : radial.rows) pts.emplace_back(x(s.r), y(s.u.real()));
    svg.polyline(pts, "#1f3fbf", 1.6);
    for (double r : radial.markers) {
        for (double sx : {-r, r}) svg.line(x(sx), y.px_lo, x(sx), y.px_hi, "red", 1.0, "2,3");
    }

    // Heatmap of Re u over the plane with the interfaces drawn as circles.
    const double top = 520;
    const double size = 400;
    const double left = 180;
    const int n = plane.resolution;
    double amp = 0.0;
    for (double v : plane.re_u) amp = std::max(amp, std::abs(v));
    if (amp <= 0.0) amp = 1.0;
    const double cell = size / n;
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            // row 0 of the grid is the most negative y, drawn at the bottom
            svg.rect(left + ix * cell, top + (n - 1 - iy) * cell, cell + 0.05, cell + 0.05,
                     diverging_color(plane.at(ix, iy) / amp));
        }
    }
    const double scale = size / (2.0 * plane.half_extent);
    const double cx = left + 0.5 * size;
    const double cy = top + 0.5 * size;
    for (double r : plane.circles) svg.circle(cx, cy, r * scale, "none", "black", 0.8);
    svg.rect(left, top, size, size, "none", "black");
    svg.text(cx, top + size + 22, fmt::format("Re u on the plane z = 0, [-{0:.3g}, {0:.3g}]^2", plane.half_extent), 12);
    // color bar
    const double bx = left + size + 40;
    for (int k = 0; k < 50; ++k) {
        const double t = 1.0 - 2.0 * (k + 0.5) / 50;
        svg.rect(bx, top + k * size / 50, 16, size / 50 + 0.05, diverging_color(t));
    }
    svg.rect(bx, top, 16, size, "none", "black");
    svg.text(bx + 22, top + 10, fmt::format("{:.3g}", amp), 11, "start");
    svg.text(bx + 22, top + size, fmt::format("{:.3g}", -amp), 11, "start");
    return svg.str();
}

}  // namespace

int cmd_freqs(const RunConfig& cfg, std::ostream& out) {
    const LayeredGeometry geom = cfg.geometry();
    const MediumSpec medium = cfg.medium();
    std::vector<ResonanceRoot> roots;
    int code = kExitOk;
    double omega_max = 0.0;
    try {
        const auto result = find_subwavelength_roots(geom, medium, cfg.mode_order, cfg.search);
        roots = result.roots;
        omega_max = result.omega_max;
    } catch (const ShortfallError& e) {
        spdlog::error("{}", e.what());
        roots = e.found;
        code = kExitShortfall;
    }

    const CsvTable table = spectrum_table(roots);
    json extra;
    extra["summary"] = {{"expected", geom.n_resonators()},
                        {"found", roots.size()},
                        {"complete", code == kExitOk},
                        {"omega_max", omega_max}};
    write_outputs(cfg, "freqs", "spectrum", table, extra);
    if (cfg.wants(OutputFormat::Svg))
        write_text(fs::path(cfg.out_dir) / "spectrum.svg", spectrum_svg(roots, geometry_label(geom)));

    fmt::print(out, "{} layers, delta = {:.6g}: {} of {} subwavelength roots\n", geom.n_layers(), medium.delta,
               roots.size(), geom.n_resonators());
    print_roots(out, roots);
    return code;
}

int cmd_table1(const RunConfig& cfg, std::ostream& out) {
    Table1Report report;
    try {
        report = run_table1();
    } catch (const ShortfallError& e) {
        fmt::print(out, "table1: root search failed: {}\n", e.what());
        return kExitMismatch;
    }

    CsvTable table({"delta", "branch", "re_omega_c", "im_omega_c", "re_omega_e", "im_omega_e", "total_rel_err_pct"});
    fmt::print(out, "{:>8}  {:>26}  {:>26}  {:>10}\n", "delta", "omega_c", "omega_e", "total err");
    for (const auto& row : report.rows) {
        for (std::size_t j = 0; j < 2; ++j) {
            table.add_row({fmt_double(row.delta), std::to_string(j + 1), fmt_double(row.computed[j].real()),
                           fmt_double(row.computed[j].imag()), fmt_double(row.formula[j].real()),
                           fmt_double(row.formula[j].imag()), fmt_double(row.total_error_pct)});
            const std::string d = j == 0 ? fmt::format("1/{:.0f}", 1.0 / row.delta) : "";
            const std::string pct = j == 0 ? fmt::format("{:.4f}%", row.total_error_pct) : "";
            fmt::print(out, "{:>8}  {:>12.7f} {:+.7f}i  {:>12.7f} {:+.7f}i  {:>10}\n", d, row.computed[j].real(),
                       row.computed[j].imag(), row.formula[j].real(), row.formula[j].imag(), pct);
        }
    }
    write_outputs(cfg, "table1", "table1", table,
                  {{"tolerance", {{"frequency", kTable1FreqTol}, {"percent", kTable1PctTol}}},
                   {"mismatches", report.mismatches}});

    if (!report.ok()) {
        fmt::print(out, "MISMATCH in {} cell(s):\n", report.mismatches.size());
        for (const auto& m : report.mismatches) fmt::print(out, "  {}\n", m);
        return kExitMismatch;
    }
    fmt::print(out, "all entries match the reference values\n");
    return kExitOk;
}

int cmd_modes(const RunConfig& cfg, std::ostream& out) {
    if (cfg.mode_order != 0) throw ConfigError("mode reconstruction is implemented for mode_order 0 only");
    const LayeredGeometry geom = cfg.geometry();
    const MediumSpec medium = cfg.medium();
    std::vector<ResonanceRoot> roots;
    int code = kExitOk;
    try {
        roots = find_subwavelength_roots(geom, medium, 0, cfg.search).roots;
    } catch (const ShortfallError& e) {
        spdlog::error("{}", e.what());
        roots = e.found;
        code = kExitShortfall;
    }

    const fs::path dir = fs::path(cfg.out_dir) / "modes";
    const double r_max = 1.25 * geom.radius(1);
    const double half = 1.1 * geom.radius(1);
    fmt::print(out, "{} layers, delta = {:.6g}: {} mode(s)\n", geom.n_layers(), medium.delta, roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const std::size_t idx = i + 1;
        const ModeProfile p = make_mode(geom, medium, roots[i].omega);
        const RadialSamples radial = sample_radial(p, r_max, kRadialPoints);
        const PlaneSamples plane = sample_plane(p, half, kPlaneResolution);

        CsvTable rt({"r", "re_u", "im_u", "region"});
        for (const auto& s : radial.rows)
            rt.add_row({fmt_double(s.r), fmt_double(s.u.real()), fmt_double(s.u.imag()), std::to_string(s.region)});
        CsvTable pt({"x", "y", "re_u", "im_u"});
        for (int iy = 0; iy < plane.resolution; ++iy)
            for (int ix = 0; ix < plane.resolution; ++ix) {
                const std::size_t at = static_cast<std::size_t>(iy) * plane.resolution + ix;
                pt.add_row({fmt_double(plane.coords[ix]), fmt_double(plane.coords[iy]), fmt_double(plane.re_u[at]),
                            fmt_double(plane.im_u[at])});
            }

        const std::string stem = fmt::format("mode_{}", idx);
        if (cfg.wants(OutputFormat::Csv)) {
            write_text(dir / (stem + "_radial.csv"), rt.str());
            write_text(dir / (stem + "_plane.csv"), pt.str());
        }
        if (cfg.wants(OutputFormat::Json)) {
            json doc;
            doc["metadata"] = {{"command", "modes"}, {"version", tool_version()}, {"config", cfg.to_json()}};
            doc["mode"] = {{"index", idx},
                           {"re_omega", p.omega.real()},
                           {"im_omega", p.omega.imag()},
                           {"norm_constant", p.norm_constant},
                           {"kernel_residual", p.kernel_residual}};
            doc["radial"] = {{"columns", rt.header()}, {"rows", rt.to_json()}, {"markers", radial.markers}};
            doc["plane"] = {{"columns", pt.header()}, {"rows", pt.to_json()}, {"circles", plane.circles}};
            write_text(dir / (stem + ".json"), doc.dump(1) + "\n");
        }
        if (cfg.wants(OutputFormat::Svg)) write_text(dir / (stem + ".svg"), mode_svg(p, radial, plane, idx));
        fmt::print(out, "{:>4}  {:.12f} {:+.12f}i  kernel residual {:.2e}\n", idx, p.omega.real(), p.omega.imag(),
                   p.kernel_residual);
    }
    return code;
}

int cmd_asymptotic(const RunConfig& cfg, std::ostream& out) {
    const MediumSpec medium = cfg.medium();
    std::vector<AsymptoticFrequency> freqs;
    json extra;
    CsvTable cvr_table({"quantity", "value"});

    if (cfg.general_single) {
        const auto& g = *cfg.general_single;
        if (!(g.capacity > 0.0) || !(g.volume > 0.0)) throw ConfigError("capacity and volume must be positive");
        freqs.push_back(omega_general_single(g.capacity, g.volume, medium.v_r, medium.tau, medium.delta));
        cvr_table.add_row({"cvr", fmt_double(g.capacity / g.volume)});
    } else {
        const LayeredGeometry geom = cfg.geometry();
        const std::size_t n = geom.n_layers();
        if (n >= 5)
            throw ConfigError(fmt::format("no closed form implemented for N = {} layers (supported: N <= 4)", n));
        freqs = asymptotic_frequencies(geom, medium);
        auto r = [&](std::size_t i) { return i <= n ? geom.radius(i) : 0.0; };
        cvr_table.add_row({"cvr_outer", fmt_double(cvr(r(1), r(2)))});
        if (n >= 3) cvr_table.add_row({"cvr_inner", fmt_double(cvr(r(3), r(4)))});
        if (n == 4) {
            const auto h = hybridization_check(r(1), r(2), r(3), r(4), medium);
            auto re = [](const AsymptoticFrequency& a) { return a.omega.real(); };
            extra["hybridization"] = {{"precondition_met", h.precondition_met},
                                      {"re_dual_low", re(h.dual_low)},
                                      {"re_outer_shell", re(h.outer_shell)},
                                      {"re_inner_shell", re(h.inner_shell)},
                                      {"re_dual_high", re(h.dual_high)},
                                      {"ordering_holds", h.ordering_holds ? json(*h.ordering_holds) : json(nullptr)}};
            fmt::print(out, "hybridization: cvr_outer = {:.6g} {} cvr_inner = {:.6g}\n", h.cvr_outer,
                       h.precondition_met ? "<=" : ">", h.cvr_inner);
            fmt::print(out, "  Re w41 = {:.10f}, Re w_OS = {:.10f}, Re w_IS = {:.10f}, Re w42 = {:.10f}\n",
                       re(h.dual_low), re(h.outer_shell), re(h.inner_shell), re(h.dual_high));
            fmt::print(out, "  ordering w41 < w_OS <= w_IS < w42: {}\n",
                       h.ordering_holds ? (*h.ordering_holds ? "holds" : "VIOLATED") : "not applicable");
        }
    }

    CsvTable table({"branch", "re_omega", "im_omega", "leading", "damping_im"});
    for (const auto& f : freqs) {
        table.add_row({std::to_string(f.branch), fmt_double(f.omega.real()), fmt_double(f.omega.imag()),
                       fmt_double(f.leading), fmt_double(f.damping.imag())});
        fmt::print(out, "branch {}: omega = {:.12f} {:+.12f}i  (a1 = {:.10g}, a2 = {:.10g}i)\n", f.branch,
                   f.omega.real(), f.omega.imag(), f.leading, f.damping.imag());
    }
    for (const auto& row : cvr_table.rows()) fmt::print(out, "{} = {}\n", row[0], row[1]);
    extra["cvr"] = cvr_table.to_json();
    write_outputs(cfg, "asymptotic", "asymptotic", table, extra);
    if (cfg.wants(OutputFormat::Csv)) write_text(fs::path(cfg.out_dir) / "asymptotic_cvr.csv", cvr_table.str());
    return kExitOk;
}

int cmd_selftest(const RunConfig& cfg, std::ostream& out) {
    (void)cfg;
    const auto results = run_selftest();
    const json report = selftest_json(results);
    out << report.dump(2) << "\n";
    for (const auto& r : results)
        if (!r.passed) spdlog::error("selftest {}/{} failed: {}", r.suite, r.name, r.detail);
    return report.at("passed").get<bool>() ? kExitOk : kExitSelftest;
}

}  // namespace nestres::cli
