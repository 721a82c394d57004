#include "table1.hpp"

#include <cmath>

#include <fmt/format.h>

#include "nestres/asymptotics.hpp"
#include "nestres/rootfind.hpp"

namespace nestres::cli {

const std::array<Table1Row, 4>& table1_reference() {
    using C = Complex;
    static const std::array<Table1Row, 4> rows = {{
        {1.0 / 100, {C{0.0513551, -0.0052161}, C{0.1754137, -0.0012548}},
         {C{0.0517470, -0.0052491}, C{0.1764784, -0.0012374}}, 1.3691},
        {1.0 / 1000, {C{0.0163513, -0.0005246}, C{0.0557735, -0.0001239}},
         {C{0.0163638, -0.0005249}, C{0.0558074, -0.0001237}}, 0.1371},
        {1.0 / 6000, {C{0.0066797, -0.0000875}, C{0.0227810, -0.0000206}},
         {C{0.0066805, -0.0000875}, C{0.0227833, -0.0000206}}, 0.0229},
        {1.0 / 10000, {C{0.0051743, -0.0000525}, C{0.0176468, -0.0000124}},
         {C{0.0051747, -0.0000525}, C{0.0176478, -0.0000124}}, 0.0137},
    }};
    return rows;
}

double total_relative_error_pct(const std::array<Complex, 2>& computed, const std::array<Complex, 2>& formula) {
    double sum = 0.0;
    for (std::size_t j = 0; j < 2; ++j) sum += std::abs(formula[j] - computed[j]) / std::abs(computed[j]);
    return 100.0 * sum;
}

namespace {

void compare(std::vector<std::string>& out, const std::string& label, Complex got, Complex want) {
    if (std::abs(got.real() - want.real()) > kTable1FreqTol || std::abs(got.imag() - want.imag()) > kTable1FreqTol) {
        out.push_back(fmt::format("{}: got {:.9f}{:+.9f}i, expected {:.7f}{:+.7f}i", label, got.real(), got.imag(),
                                  want.real(), want.imag()));
    }
}

}  // namespace

Table1Report run_table1() {
    const LayeredGeometry geom({4.0, 3.0, 2.0, 1.0});
    Table1Report report;
    for (const auto& ref : table1_reference()) {
        const MediumSpec medium = medium_from_delta(ref.delta);
        Table1Row row{ref.delta, {}, {}, 0.0};
        const auto found = find_subwavelength_roots(geom, medium, 0, SearchConfig{});
        for (std::size_t j = 0; j < 2; ++j) row.computed[j] = found.roots[j].omega;
        const auto [w1, w2] = omega_dual4(4.0, 3.0, 2.0, 1.0, medium.v_r, medium.tau, medium.delta);
        row.formula = {w1.omega, w2.omega};
        row.total_error_pct = total_relative_error_pct(row.computed, row.formula);

        const std::string d = fmt::format("delta=1/{:.0f}", 1.0 / ref.delta);
        for (std::size_t j = 0; j < 2; ++j) {
            compare(report.mismatches, fmt::format("{} computed[{}]", d, j + 1), row.computed[j], ref.computed[j]);
            compare(report.mismatches, fmt::format("{} formula[{}]", d, j + 1), row.formula[j], ref.formula[j]);
        }
        if (std::abs(row.total_error_pct - ref.total_error_pct) > kTable1PctTol) {
            report.mismatches.push_back(fmt::format("{} total error: got {:.6f}%, expected {:.4f}%", d,
                                                    row.total_error_pct, ref.total_error_pct));
        }
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace nestres::cli
