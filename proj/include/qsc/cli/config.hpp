// config.hpp: experiment configuration files (JSON).
//
// Schema (unknown keys anywhere are errors):
//
//   {
//     "name": "custom" | <preset id>,
//     "angle_unit": "rad" | "deg",                         (default "rad")
//     "reservoirs": [ { "theta": x, "phi": x, "coupling": x, "weight": x,
//                       "noise": { "epsilon": x, "eta": x } } ],
//     "engine": { "h": x, "tau": x, "max_collisions": n, "tol": x, "window": n,
//                 "mixing_mode": "convex" | "sequential" | "stochastic",
//                 "seed": n, "stop_on_converge": bool },
//     "initial_state": { "theta": x, "phi": x },          (default |+>)
//     "target": "mixture" | { "theta": x, "phi": x },
//     "sweep": { "parameter": path, "values": [x, ...] },
//     "output": { "path": dir, "format": "csv" | "json" }
//   }
//
// Custom runs need "reservoirs" (theta and coupling per entry) and
// "engine.tau"; weights default to uniform and must be given for all
// reservoirs or none. A preset config may only carry name, angle_unit and
// output. Sweep paths: engine.h, engine.tau, reservoirs.<i>.theta|phi|
// coupling|weight, reservoirs.<i>.noise.epsilon|eta. Angles in the file,
// including angle sweeps, use angle_unit and are stored in radians.

#pragma once

#include "qsc/cli/output.hpp"
#include "qsc/collision.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qsc::cli {

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

enum class AngleUnit { radians, degrees };

AngleUnit parse_angle_unit(const std::string& s);
OutputFormat parse_output_format(const std::string& s);

struct SweepSpec {
    std::string parameter;
    std::vector<double> values;  // radians for angle parameters
};

struct TargetSpec {
    bool mixture = false;
    double theta = 0.0;
    double phi = 0.0;
};

struct ExperimentConfig {
    std::string name = "custom";
    std::vector<collision::ReservoirSpec> reservoirs;
    collision::EngineConfig engine;
    bool seed_given = false;
    std::optional<SweepSpec> sweep;
    std::optional<std::pair<double, double>> initial_state;  // (theta, phi)
    std::optional<TargetSpec> target;
    std::optional<std::filesystem::path> output_dir;
    std::optional<OutputFormat> format;
    AngleUnit angle_unit = AngleUnit::radians;

    bool is_preset() const { return name != "custom"; }
};

/// Parses and validates. `unit_override` (from the command line) replaces
/// the file's angle_unit.
ExperimentConfig parse_config(const nlohmann::json& doc,
                              std::optional<AngleUnit> unit_override = std::nullopt);

/// Reads a file; IoError when unreadable, ConfigError when malformed.
ExperimentConfig load_config(const std::filesystem::path& path,
                             std::optional<AngleUnit> unit_override = std::nullopt);

/// Applies a sweep path assignment to a copy of the config.
ExperimentConfig with_parameter(const ExperimentConfig& cfg, const std::string& path, double value);

bool is_angle_parameter(const std::string& path);

}  // namespace qsc::cli
