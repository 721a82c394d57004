#pragma once

#include <array>
#include <string>
#include <vector>

#include "nestres/medium.hpp"

namespace nestres::cli {

/// One delta row of the four-layer comparison: two roots, two formula values, total error in percent.
struct Table1Row {
    double delta;
    std::array<Complex, 2> computed;
    std::array<Complex, 2> formula;
    double total_error_pct;
};

/// Reference values, radii (4, 3, 2, 1) with unit resonator parameters.
const std::array<Table1Row, 4>& table1_reference();

inline constexpr double kTable1FreqTol = 1e-7;
inline constexpr double kTable1PctTol = 2e-4;

/// sum_j |w_e - w_c| / |w_c|, in percent.
double total_relative_error_pct(const std::array<Complex, 2>& computed, const std::array<Complex, 2>& formula);

struct Table1Report {
    std::vector<Table1Row> rows;
    std::vector<std::string> mismatches;  ///< human-readable offending cells
    [[nodiscard]] bool ok() const { return mismatches.empty(); }
};

/// Recomputes every row with the root finder and the closed-form pair, then compares.
Table1Report run_table1();

}  // namespace nestres::cli
