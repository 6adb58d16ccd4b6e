#include "semiquat/config.hpp"

#include <fstream>
#include <sstream>

#include "semiquat/errors.hpp"

namespace semiquat {

namespace {

const std::map<std::string, double> kDefaultTolerances = {
    {"apparatus", 1e-9},          //
    {"frenet_ode", 1e-8},         //
    {"distance_law", 1e-8},       //
    {"tangency", 1e-8},           //
    {"frame_transfer", 1e-6},     //
    {"curvature_transfer", 1e-6}, //
    {"w_curve", 1e-6},            //
    {"spatial_exclusion", 1e-6},
};

int read_sign(const nlohmann::json& j, const std::string& where) {
    if (!j.is_number()) throw ConfigError(where + " must be +1 or -1");
    const double v = j.get<double>();
    if (v != 1.0 && v != -1.0) throw ConfigError(where + " must be +1 or -1");
    return static_cast<int>(v);
}

MetricContext parse_metric(const nlohmann::json& j) {
    if (j.is_string()) return metric_by_name(j.get<std::string>());
    if (!j.is_object()) throw ConfigError("metric must be a name or an object");

    MetricContext ctx = metric_default();
    bool explicit_spatial = false;
    for (const auto& [key, value] : j.items()) {
        if (key == "ambient_signs") {
            if (!value.is_array() || value.size() != 4)
                throw ConfigError("metric.ambient_signs must be an array of 4 signs");
            for (int i = 0; i < 4; ++i) ctx.ambient_signs[i] = read_sign(value[i], "metric.ambient_signs");
        } else if (key == "spatial_signs") {
            if (!value.is_array() || value.size() != 3)
                throw ConfigError("metric.spatial_signs must be an array of 3 signs");
            for (int i = 0; i < 3; ++i) ctx.spatial_signs[i] = read_sign(value[i], "metric.spatial_signs");
            explicit_spatial = true;
        } else if (key == "orientation") {
            ctx.orientation = read_sign(value, "metric.orientation");
        } else if (key == "null_tol") {
            if (!value.is_number()) throw ConfigError("metric.null_tol must be a number");
            ctx.null_tol = value.get<double>();
        } else {
            throw ConfigError("unknown metric key: " + key);
        }
    }
    if (!explicit_spatial)
        for (int i = 0; i < 3; ++i) ctx.spatial_signs[i] = ctx.ambient_signs[i];
    ctx.validate();
    return ctx;
}

SampleGrid parse_grid(const nlohmann::json& j, const SampleGrid& base) {
    if (!j.is_object()) throw ConfigError("grid must be an object with s_min, s_max, count");
    SampleGrid g = base;
    for (const auto& [key, value] : j.items()) {
        if (key == "s_min") g.s_min = value.get<double>();
        else if (key == "s_max") g.s_max = value.get<double>();
        else if (key == "count") g.count = value.get<int>();
        else throw ConfigError("unknown grid key: " + key);
    }
    return g;
}

} // namespace

std::vector<double> SampleGrid::values() const {
    std::vector<double> out;
    out.reserve(static_cast<size_t>(count > 0 ? count : 0));
    for (int i = 0; i < count; ++i)
        out.push_back(s_min + (s_max - s_min) * i / (count - 1));
    return out;
}

void RunConfig::validate() const {
    metric.validate();
    if (curve.empty()) throw ConfigError("curve must not be empty");
    if (grid.count < 2) throw ConfigError("grid count must be at least 2");
    if (!(grid.s_min < grid.s_max)) throw ConfigError("grid requires s_min < s_max");
    for (const auto& [name, tol] : tolerances)
        if (!(tol > 0.0)) throw ConfigError("tolerance '" + name + "' must be positive");
    if (output.format != "csv" && output.format != "json")
        throw ConfigError("output format must be csv or json");
    if (drop_axis < 1 || drop_axis > 4) throw ConfigError("drop_axis must be in 1..4");
}

RunConfig default_config() {
    RunConfig cfg;
    cfg.tolerances = kDefaultTolerances;
    return cfg;
}

RunConfig parse_config(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
    RunConfig cfg = default_config();
    for (const auto& [key, value] : doc.items()) {
        if (key == "metric") {
            cfg.metric = parse_metric(value);
        } else if (key == "curve") {
            if (!value.is_string()) throw ConfigError("curve must be a string");
            cfg.curve = value.get<std::string>();
        } else if (key == "c") {
            if (!value.is_number()) throw ConfigError("c must be a number");
            cfg.c = value.get<double>();
        } else if (key == "grid" || key == "sample_grid") {
            cfg.grid = parse_grid(value, cfg.grid);
        } else if (key == "tolerances") {
            if (!value.is_object()) throw ConfigError("tolerances must be an object");
            for (const auto& [name, tol] : value.items()) {
                if (!tol.is_number()) throw ConfigError("tolerance '" + name + "' must be a number");
                cfg.tolerances[name] = tol.get<double>();
            }
        } else if (key == "output") {
            if (!value.is_object()) throw ConfigError("output must be an object");
            for (const auto& [name, v] : value.items()) {
                if (name == "path") cfg.output.path = v.get<std::string>();
                else if (name == "format") cfg.output.format = v.get<std::string>();
                else throw ConfigError("unknown output key: " + name);
            }
        } else if (key == "drop_axis") {
            if (!value.is_number_integer()) throw ConfigError("drop_axis must be an integer");
            cfg.drop_axis = value.get<int>();
        } else {
            throw ConfigError("unknown config key: " + key);
        }
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return parse_config(doc);
}

void apply_grid_string(RunConfig& cfg, const std::string& text) {
    std::istringstream in(text);
    std::string a, b, n;
    if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, n))
        throw ConfigError("--grid expects a:b:n, got '" + text + "'");
    try {
        size_t pos = 0;
        cfg.grid.s_min = std::stod(a, &pos);
        if (pos != a.size()) throw std::invalid_argument(a);
        cfg.grid.s_max = std::stod(b, &pos);
        if (pos != b.size()) throw std::invalid_argument(b);
        cfg.grid.count = std::stoi(n, &pos);
        if (pos != n.size()) throw std::invalid_argument(n);
    } catch (const std::exception&) {
        throw ConfigError("--grid expects a:b:n, got '" + text + "'");
    }
}

nlohmann::json config_to_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["metric"] = {
        {"ambient_signs", cfg.metric.ambient_signs},
        {"spatial_signs", cfg.metric.spatial_signs},
        {"orientation", cfg.metric.orientation},
        {"null_tol", cfg.metric.null_tol},
    };
    j["curve"] = cfg.curve;
    j["c"] = cfg.c;
    j["grid"] = {{"s_min", cfg.grid.s_min}, {"s_max", cfg.grid.s_max}, {"count", cfg.grid.count}};
    j["tolerances"] = cfg.tolerances;
    j["output"] = {{"path", cfg.output.path}, {"format", cfg.output.format}};
    j["drop_axis"] = cfg.drop_axis;
    return j;
}

} // namespace semiquat
