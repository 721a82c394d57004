#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace nestres::cli {

struct CheckResult {
    std::string suite;
    std::string name;
    bool passed = false;
    std::string detail;  ///< measured value or the failing assertion
};

/// Runs the module invariant suites at fixed seeds.
std::vector<CheckResult> run_selftest();

nlohmann::json selftest_json(const std::vector<CheckResult>& results);

}  // namespace nestres::cli
