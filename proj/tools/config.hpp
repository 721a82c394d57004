#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nestres/medium.hpp"
#include "nestres/rootfind.hpp"

namespace nestres::cli {

/// Malformed or inconsistent run configuration (CLI exit code 1).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GeometricSpec {
    int layers = 0;
    double r1 = 0.0;
    double scale = 0.0;
};

struct MaterialSpec {
    double rho_r = 1.0;
    double kappa_r = 1.0;
    double rho = 1.0;
    double kappa = 1.0;
};

struct GeneralSingleSpec {
    double capacity = 0.0;
    double volume = 0.0;
};

enum class OutputFormat { Csv, Json, Svg, All };

struct RunConfig {
    // exactly one geometry form
    std::optional<std::vector<double>> radii;
    std::optional<int> equidistant;
    std::optional<GeometricSpec> geometric;

    // exactly one material form
    std::optional<MaterialSpec> materials;
    std::optional<double> delta;

    std::optional<GeneralSingleSpec> general_single;

    int mode_order = 0;
    SearchConfig search;
    std::string out_dir = "out";
    OutputFormat format = OutputFormat::All;

    [[nodiscard]] LayeredGeometry geometry() const;
    [[nodiscard]] MediumSpec medium() const;
    [[nodiscard]] bool wants(OutputFormat f) const { return format == OutputFormat::All || format == f; }
    /// Canonical JSON echo, used as output metadata.
    [[nodiscard]] nlohmann::json to_json() const;
    /// Throws ConfigError unless exactly one geometry (at most one if not required) and one
    /// material form are present and both construct.
    void validate(bool geometry_required = true) const;
};

OutputFormat parse_format(const std::string& s);
std::string format_name(OutputFormat f);

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

}  // namespace nestres::cli
