#include "config.hpp"

#include <fstream>

namespace nestres::cli {

using nlohmann::json;

namespace {

template <class T>
T get_number(const json& obj, const char* key) {
    if (!obj.contains(key)) throw ConfigError(std::string("missing key '") + key + "'");
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(std::string("key '") + key + "' must be a number");
    if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) throw ConfigError(std::string("key '") + key + "' must be an integer");
    }
    return v.get<T>();
}

template <class T>
void maybe_number(const json& obj, const char* key, T& out) {
    if (obj.contains(key)) out = get_number<T>(obj, key);
}

}  // namespace

OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    if (s == "svg") return OutputFormat::Svg;
    if (s == "all") return OutputFormat::All;
    throw ConfigError("unknown output format '" + s + "' (expected csv|json|svg|all)");
}

std::string format_name(OutputFormat f) {
    switch (f) {
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Json: return "json";
        case OutputFormat::Svg: return "svg";
        case OutputFormat::All: return "all";
    }
    return "all";
}

void RunConfig::validate(bool geometry_required) const {
    const int geometry_forms = radii.has_value() + equidistant.has_value() + geometric.has_value();
    if (geometry_forms > 1 || (geometry_required && geometry_forms != 1))
        throw ConfigError("exactly one of 'radii', 'equidistant', 'geometric' must be given (found " +
                          std::to_string(geometry_forms) + ")");
    const int material_forms = materials.has_value() + delta.has_value();
    if (material_forms != 1) throw ConfigError("exactly one of 'materials', 'delta' must be given");
    if (mode_order < 0) throw ConfigError("mode_order must be non-negative");
    try {
        if (geometry_forms == 1) (void)geometry();
        (void)medium();
        search.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

LayeredGeometry RunConfig::geometry() const {
    if (radii) return LayeredGeometry(*radii);
    if (equidistant) return geometry_equidistant(*equidistant);
    if (geometric) return geometry_geometric(geometric->layers, geometric->r1, geometric->scale);
    throw ConfigError("no geometry specified");
}

MediumSpec RunConfig::medium() const {
    if (materials) return make_medium(materials->rho_r, materials->kappa_r, materials->rho, materials->kappa);
    if (delta) return medium_from_delta(*delta);
    throw ConfigError("no material specified");
}

json RunConfig::to_json() const {
    json j;
    if (radii) j["radii"] = *radii;
    if (equidistant) j["equidistant"] = *equidistant;
    if (geometric) j["geometric"] = {{"layers", geometric->layers}, {"r1", geometric->r1}, {"scale", geometric->scale}};
    if (materials)
        j["materials"] = {{"rho_r", materials->rho_r},
                          {"kappa_r", materials->kappa_r},
                          {"rho", materials->rho},
                          {"kappa", materials->kappa}};
    if (delta) j["delta"] = *delta;
    if (general_single)
        j["general_single"] = {{"capacity", general_single->capacity}, {"volume", general_single->volume}};
    j["mode_order"] = mode_order;
    j["search"] = {{"omega_max", search.omega_max},
                   {"grid_points", search.grid_points},
                   {"tol_abs", search.tol_abs},
                   {"tol_rel", search.tol_rel},
                   {"max_iter", search.max_iter},
                   {"imag_seed_offset", search.imag_seed_offset},
                   {"verify_tol", search.verify_tol}};
    j["output"] = {{"dir", out_dir}, {"format", format_name(format)}};
    return j;
}

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
    static const std::vector<std::string> known = {"radii",     "equidistant", "geometric", "materials",      "delta",
                                                   "mode_order", "search",     "output",    "general_single"};
    for (const auto& [key, _] : doc.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError("unknown configuration key '" + key + "'");
    }

    RunConfig cfg;
    if (doc.contains("radii")) {
        const auto& r = doc.at("radii");
        if (!r.is_array() || r.empty()) throw ConfigError("'radii' must be a non-empty array");
        std::vector<double> radii;
        for (const auto& v : r) {
            if (!v.is_number()) throw ConfigError("'radii' entries must be numbers");
            radii.push_back(v.get<double>());
        }
        cfg.radii = std::move(radii);
    }
    if (doc.contains("equidistant")) {
        const auto& e = doc.at("equidistant");
        if (!e.is_number_integer()) throw ConfigError("'equidistant' must be an integer layer count");
        cfg.equidistant = e.get<int>();
    }
    if (doc.contains("geometric")) {
        const auto& g = doc.at("geometric");
        if (!g.is_object()) throw ConfigError("'geometric' must be an object {layers, r1, scale}");
        GeometricSpec spec;
        spec.layers = get_number<int>(g, "layers");
        spec.scale = get_number<double>(g, "scale");
        spec.r1 = g.contains("r1") ? get_number<double>(g, "r1") : static_cast<double>(spec.layers);
        cfg.geometric = spec;
    }
    if (doc.contains("materials")) {
        const auto& m = doc.at("materials");
        if (!m.is_object()) throw ConfigError("'materials' must be an object {rho_r, kappa_r, rho, kappa}");
        cfg.materials = MaterialSpec{get_number<double>(m, "rho_r"), get_number<double>(m, "kappa_r"),
                                     get_number<double>(m, "rho"), get_number<double>(m, "kappa")};
    }
    if (doc.contains("delta")) cfg.delta = get_number<double>(doc, "delta");
    if (doc.contains("general_single")) {
        const auto& g = doc.at("general_single");
        if (!g.is_object()) throw ConfigError("'general_single' must be an object {capacity, volume}");
        cfg.general_single = GeneralSingleSpec{get_number<double>(g, "capacity"), get_number<double>(g, "volume")};
    }
    maybe_number(doc, "mode_order", cfg.mode_order);
    if (doc.contains("search")) {
        const auto& s = doc.at("search");
        if (!s.is_object()) throw ConfigError("'search' must be an object");
        maybe_number(s, "omega_max", cfg.search.omega_max);
        maybe_number(s, "grid_points", cfg.search.grid_points);
        maybe_number(s, "tol_abs", cfg.search.tol_abs);
        maybe_number(s, "tol_rel", cfg.search.tol_rel);
        maybe_number(s, "max_iter", cfg.search.max_iter);
        maybe_number(s, "imag_seed_offset", cfg.search.imag_seed_offset);
        maybe_number(s, "verify_tol", cfg.search.verify_tol);
    }
    if (doc.contains("output")) {
        const auto& o = doc.at("output");
        if (!o.is_object()) throw ConfigError("'output' must be an object");
        if (o.contains("dir")) cfg.out_dir = o.at("dir").get<std::string>();
        if (o.contains("format")) cfg.format = parse_format(o.at("format").get<std::string>());
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(doc);
}

}  // namespace nestres::cli
