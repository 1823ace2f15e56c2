#include "qsc/cli/config.hpp"

#include "qsc/cli/presets.hpp"

#include <fstream>
#include <numbers>
#include <set>

namespace qsc::cli {

using nlohmann::json;

AngleUnit parse_angle_unit(const std::string& s) {
    if (s == "rad" || s == "radians") return AngleUnit::radians;
    if (s == "deg" || s == "degrees") return AngleUnit::degrees;
    throw ConfigError("angle_unit must be 'rad' or 'deg', got '" + s + "'");
}

OutputFormat parse_output_format(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw ConfigError("format must be 'csv' or 'json', got '" + s + "'");
}

namespace {

void only_keys(const json& obj, const std::string& where, std::set<std::string> allowed) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

double number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError(where + " is missing '" + key + "'");
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
    return v.get<double>();
}

double number_or(const json& obj, const std::string& key, const std::string& where, double fallback) {
    return obj.contains(key) ? number(obj, key, where) : fallback;
}

std::uint64_t unsigned_or(const json& obj, const std::string& key, const std::string& where,
                          std::uint64_t fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
    throw ConfigError(where + "." + key + " must be a non-negative integer");
}

double to_radians(double x, AngleUnit unit) {
    return unit == AngleUnit::degrees ? x * std::numbers::pi / 180.0 : x;
}

std::pair<double, double> angles(const json& obj, const std::string& where, AngleUnit unit) {
    only_keys(obj, where, {"theta", "phi"});
    return {to_radians(number(obj, "theta", where), unit),
            to_radians(number_or(obj, "phi", where, 0.0), unit)};
}

collision::EngineConfig parse_engine(const json& obj, bool& seed_given) {
    const std::string where = "engine";
    only_keys(obj, where,
              {"h", "tau", "max_collisions", "tol", "window", "mixing_mode", "seed", "stop_on_converge"});
    collision::EngineConfig cfg;
    cfg.h = number_or(obj, "h", where, cfg.h);
    cfg.tau = number(obj, "tau", where);
    cfg.max_collisions = unsigned_or(obj, "max_collisions", where, cfg.max_collisions);
    cfg.tol = number_or(obj, "tol", where, cfg.tol);
    cfg.window = unsigned_or(obj, "window", where, cfg.window);
    if (obj.contains("mixing_mode")) {
        if (!obj.at("mixing_mode").is_string()) throw ConfigError("engine.mixing_mode must be a string");
        try {
            cfg.mixing_mode = collision::parse_mixing_mode(obj.at("mixing_mode").get<std::string>());
        } catch (const InvalidArgument& e) {
            throw ConfigError(e.what());
        }
    }
    seed_given = obj.contains("seed");
    cfg.seed = unsigned_or(obj, "seed", where, cfg.seed);
    if (obj.contains("stop_on_converge")) {
        if (!obj.at("stop_on_converge").is_boolean()) throw ConfigError("engine.stop_on_converge must be a boolean");
        cfg.stop_on_converge = obj.at("stop_on_converge").get<bool>();
    }
    return cfg;
}

std::vector<collision::ReservoirSpec> parse_reservoirs(const json& arr, AngleUnit unit) {
    if (!arr.is_array() || arr.empty()) throw ConfigError("reservoirs must be a non-empty array");
    std::vector<collision::ReservoirSpec> out;
    std::size_t weighted = 0;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto& r = arr[i];
        const std::string where = "reservoirs[" + std::to_string(i) + "]";
        only_keys(r, where, {"theta", "phi", "coupling", "weight", "noise"});
        collision::ReservoirSpec spec;
        spec.theta = to_radians(number(r, "theta", where), unit);
        spec.phi = to_radians(number_or(r, "phi", where, 0.0), unit);
        spec.coupling = number(r, "coupling", where);
        if (r.contains("weight")) {
            spec.weight = number(r, "weight", where);
            ++weighted;
        }
        if (r.contains("noise")) {
            const auto& n = r.at("noise");
            only_keys(n, where + ".noise", {"epsilon", "eta"});
            spec.noise = collision::NoiseSpec{number(n, "epsilon", where + ".noise"),
                                              number_or(n, "eta", where + ".noise", 0.0)};
        }
        out.push_back(spec);
    }
    if (weighted == 0) {
        for (auto& s : out) s.weight = 1.0 / static_cast<double>(out.size());
    } else if (weighted != out.size()) {
        throw ConfigError("reservoir weights must be given for all reservoirs or none");
    }
    return out;
}

void check_sweep_path(const ExperimentConfig& cfg, const std::string& path) {
    // Dry run on the first value surfaces bad paths as ConfigError.
    (void)with_parameter(cfg, path, cfg.sweep && !cfg.sweep->values.empty() ? cfg.sweep->values[0] : 0.0);
}

}  // namespace

bool is_angle_parameter(const std::string& path) {
    return path.ends_with(".theta") || path.ends_with(".phi");
}

ExperimentConfig with_parameter(const ExperimentConfig& cfg, const std::string& path, double value) {
    ExperimentConfig out = cfg;
    if (path == "engine.h") {
        out.engine.h = value;
    } else if (path == "engine.tau") {
        out.engine.tau = value;
    } else if (path.starts_with("reservoirs.")) {
        const auto rest = path.substr(std::string("reservoirs.").size());
        const auto dot = rest.find('.');
        if (dot == std::string::npos) throw ConfigError("bad sweep parameter '" + path + "'");
        std::size_t index = 0;
        try {
            std::size_t used = 0;
            index = std::stoul(rest.substr(0, dot), &used);
            if (used != dot) throw std::invalid_argument("index");
        } catch (const std::exception&) {
            throw ConfigError("bad reservoir index in sweep parameter '" + path + "'");
        }
        if (index >= out.reservoirs.size()) {
            throw ConfigError("sweep parameter '" + path + "' names a missing reservoir");
        }
        auto& r = out.reservoirs[index];
        const auto field = rest.substr(dot + 1);
        if (field == "theta") r.theta = value;
        else if (field == "phi") r.phi = value;
        else if (field == "coupling") r.coupling = value;
        else if (field == "weight") r.weight = value;
        else if (field == "noise.epsilon" || field == "noise.eta") {
            if (!r.noise) r.noise = collision::NoiseSpec{};
            (field == "noise.epsilon" ? r.noise->epsilon : r.noise->eta) = value;
        } else {
            throw ConfigError("unknown sweep field '" + field + "'");
        }
    } else {
        throw ConfigError("unknown sweep parameter '" + path + "'");
    }
    return out;
}

ExperimentConfig parse_config(const json& doc, std::optional<AngleUnit> unit_override) {
    only_keys(doc, "config",
              {"name", "angle_unit", "reservoirs", "engine", "initial_state", "target", "sweep", "output"});
    ExperimentConfig cfg;
    if (doc.contains("name")) {
        if (!doc.at("name").is_string()) throw ConfigError("name must be a string");
        cfg.name = doc.at("name").get<std::string>();
    }
    if (doc.contains("angle_unit")) {
        if (!doc.at("angle_unit").is_string()) throw ConfigError("angle_unit must be a string");
        cfg.angle_unit = parse_angle_unit(doc.at("angle_unit").get<std::string>());
    }
    if (unit_override) cfg.angle_unit = *unit_override;
    if (doc.contains("output")) {
        const auto& o = doc.at("output");
        only_keys(o, "output", {"path", "format"});
        if (o.contains("path")) {
            if (!o.at("path").is_string()) throw ConfigError("output.path must be a string");
            cfg.output_dir = o.at("path").get<std::string>();
        }
        if (o.contains("format")) {
            if (!o.at("format").is_string()) throw ConfigError("output.format must be a string");
            cfg.format = parse_output_format(o.at("format").get<std::string>());
        }
    }

    if (cfg.is_preset()) {
        if (!find_preset(cfg.name)) throw ConfigError("unknown preset '" + cfg.name + "'");
        for (const char* key : {"reservoirs", "engine", "initial_state", "target", "sweep"}) {
            if (doc.contains(key)) {
                throw ConfigError(std::string("preset configs cannot set '") + key + "'");
            }
        }
        return cfg;
    }

    if (!doc.contains("reservoirs")) throw ConfigError("custom config needs 'reservoirs'");
    if (!doc.contains("engine")) throw ConfigError("custom config needs 'engine'");
    cfg.reservoirs = parse_reservoirs(doc.at("reservoirs"), cfg.angle_unit);
    cfg.engine = parse_engine(doc.at("engine"), cfg.seed_given);
    if (doc.contains("initial_state")) {
        cfg.initial_state = angles(doc.at("initial_state"), "initial_state", cfg.angle_unit);
    }
    if (doc.contains("target")) {
        const auto& t = doc.at("target");
        if (t.is_string()) {
            if (t.get<std::string>() != "mixture") throw ConfigError("target must be 'mixture' or an angle object");
            cfg.target = TargetSpec{true, 0.0, 0.0};
        } else {
            const auto [theta, phi] = angles(t, "target", cfg.angle_unit);
            cfg.target = TargetSpec{false, theta, phi};
        }
    }
    if (doc.contains("sweep")) {
        const auto& s = doc.at("sweep");
        only_keys(s, "sweep", {"parameter", "values"});
        if (!s.contains("parameter") || !s.at("parameter").is_string()) {
            throw ConfigError("sweep.parameter must be a string");
        }
        if (!s.contains("values") || !s.at("values").is_array() || s.at("values").empty()) {
            throw ConfigError("sweep.values must be a non-empty array");
        }
        SweepSpec sweep{s.at("parameter").get<std::string>(), {}};
        for (const auto& v : s.at("values")) {
            if (!v.is_number()) throw ConfigError("sweep.values must be numbers");
            const double x = v.get<double>();
            sweep.values.push_back(is_angle_parameter(sweep.parameter) ? to_radians(x, cfg.angle_unit) : x);
        }
        cfg.sweep = std::move(sweep);
        check_sweep_path(cfg, cfg.sweep->parameter);
    }

    // Semantic validation through the library's own checks.
    try {
        collision::validate_reservoirs(cfg.reservoirs);
        cfg.engine.validate();
        if (cfg.initial_state) (void)states::pure_qubit(cfg.initial_state->first, cfg.initial_state->second);
        if (cfg.target && !cfg.target->mixture) (void)states::pure_qubit(cfg.target->theta, cfg.target->phi);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, std::optional<AngleUnit> unit_override) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    return parse_config(doc, unit_override);
}

}  // namespace qsc::cli
