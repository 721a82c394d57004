#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "commands.hpp"
#include "nestres/modes.hpp"
#include "nestres/rootfind.hpp"

using namespace nestres;
using namespace nestres::cli;

namespace {

struct Overrides {
    std::string config;
    std::optional<std::string> out;
    std::optional<double> delta;
    std::optional<int> layers;
    std::optional<double> scale;
    std::optional<double> r1;
    std::optional<double> omega_max;
    std::optional<int> grid;
    std::optional<double> tol;
    std::optional<std::string> format;
};

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("nestres");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    const char* env = std::getenv("RESONATOR_LOG");
    const std::string level = env ? env : "info";
    if (level == "error") {
        spdlog::set_level(spdlog::level::err);
    } else if (level == "info") {
        spdlog::set_level(spdlog::level::info);
    } else if (level == "debug") {
        spdlog::set_level(spdlog::level::debug);
    } else {
        spdlog::set_level(spdlog::level::info);
        spdlog::warn("RESONATOR_LOG='{}' not recognised (error|info|debug); using info", level);
    }
}

RunConfig build_config(const Overrides& o) {
    RunConfig cfg = o.config.empty() ? RunConfig{} : load_config(o.config);
    if (o.out) cfg.out_dir = *o.out;
    if (o.format) cfg.format = parse_format(*o.format);
    if (o.delta) {
        cfg.materials.reset();
        cfg.delta = *o.delta;
    }
    if (o.layers) {
        cfg.radii.reset();
        cfg.equidistant.reset();
        cfg.geometric.reset();
        if (o.scale)
            cfg.geometric = GeometricSpec{*o.layers, o.r1.value_or(static_cast<double>(*o.layers)), *o.scale};
        else if (o.r1)
            throw ConfigError("--r1 requires --scale (geometric radii)");
        else
            cfg.equidistant = *o.layers;
    } else if (o.scale || o.r1) {
        if (!cfg.geometric) throw ConfigError("--scale/--r1 need --layers or a 'geometric' config entry");
        if (o.scale) cfg.geometric->scale = *o.scale;
        if (o.r1) cfg.geometric->r1 = *o.r1;
    }
    if (o.omega_max) cfg.search.omega_max = *o.omega_max;
    if (o.grid) cfg.search.grid_points = *o.grid;
    if (o.tol) cfg.search.tol_abs = *o.tol;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();

    CLI::App app{"Subwavelength resonances of concentric layered high-contrast resonators"};
    app.require_subcommand(1);
    Overrides o;
    app.add_option("--config", o.config, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--out", o.out, "output directory (default: out)");
    app.add_option("--delta", o.delta, "density contrast with unit resonator parameters");
    app.add_option("--layers", o.layers, "number of layers (equidistant radii unless --scale)");
    app.add_option("--scale", o.scale, "geometric radius ratio s in (0, 1)");
    app.add_option("--r1", o.r1, "outermost radius for geometric radii (default: layer count)");
    app.add_option("--omega-max", o.omega_max, "root scan ceiling (default: automatic)");
    app.add_option("--grid", o.grid, "root scan grid points");
    app.add_option("--tol", o.tol, "absolute Muller step tolerance");
    app.add_option("--format", o.format, "csv|json|svg|all")->check(CLI::IsMember({"csv", "json", "svg", "all"}));

    struct Command {
        const char* name;
        const char* help;
        int (*run)(const RunConfig&, std::ostream&);
        bool needs_geometry;
        bool needs_material;
    };
    const Command commands[] = {
        {"freqs", "subwavelength resonant frequencies (spectrum.csv/json/svg)", cmd_freqs, true, true},
        {"table1", "four-layer regression against the reference table", cmd_table1, false, false},
        {"modes", "eigenmode profiles per frequency (modes/)", cmd_modes, true, true},
        {"asymptotic", "closed-form two-term frequencies and CVR report", cmd_asymptotic, false, true},
        {"selftest", "run the invariant suites, JSON report on stdout", cmd_selftest, false, false},
    };
    for (const auto& c : commands) app.add_subcommand(c.name, c.help)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    for (const auto& c : commands) {
        if (!app.got_subcommand(c.name)) continue;
        try {
            RunConfig cfg = build_config(o);
            // asymptotic takes either a geometry or capacity/volume inputs
            const bool asymptotic = std::string(c.name) == "asymptotic";
            if (c.needs_material) cfg.validate(c.needs_geometry || (asymptotic && !cfg.general_single));
            return c.run(cfg, std::cout);
        } catch (const ConfigError& e) {
            spdlog::error("configuration error: {}", e.what());
            return kExitConfig;
        } catch (const std::invalid_argument& e) {
            spdlog::error("invalid input: {}", e.what());
            return kExitConfig;
        } catch (const ResidualError& e) {
            spdlog::error("{}", e.what());
            return kExitRuntime;
        } catch (const std::exception& e) {
            spdlog::error("{}", e.what());
            return kExitRuntime;
        }
    }
    return kExitConfig;
}
