// presets.hpp: the built-in experiment catalog, one entry per figure panel.

#pragma once

#include "qsc/classifier.hpp"
#include "qsc/cli/output.hpp"
#include "qsc/physical.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace qsc::cli {

struct PresetInfo {
    std::string id;
    std::string figure;
    std::string description;
};

const std::vector<PresetInfo>& preset_catalog();
const PresetInfo* find_preset(const std::string& id);

struct RunOptions {
    std::filesystem::path output_dir = "out";
    OutputFormat format = OutputFormat::csv;
    std::uint64_t seed = kDefaultSeed;
    unsigned jobs = 0;
    std::optional<std::size_t> max_collisions;
    std::optional<double> tol;
    /// How J [MHz] * tau [ns] becomes the dimensionless coupling phase in
    /// the physical-parameter presets.
    physical::FrequencyConvention convention = physical::FrequencyConvention::angular;
    /// Overrides the dataset sampler of the random-angle presets.
    std::optional<classifier::Sampler> sampler;
};

struct RunOutcome {
    std::vector<std::filesystem::path> files;
    /// False when some run that was meant to stop at convergence hit its
    /// collision budget instead.
    bool all_converged = true;
};

/// Throws ConfigError for unknown ids, IoError when outputs cannot be written.
RunOutcome run_preset(const std::string& id, const RunOptions& options);

// Parameters shared with the tests.
inline constexpr double kNominalCoupling = 0.1;
inline constexpr double kNominalTau = 0.5;  // 5e-2 / J at J = 0.1
inline constexpr std::size_t kSweepBudget = 200000;
// fig4a includes pairs with one channel at J/6 and the other off.
inline constexpr std::size_t kWeakCouplingBudget = 2000000;
inline constexpr std::size_t kFig1Collisions = 5000;
inline constexpr std::size_t kPhysicalCollisions = 2000;
inline constexpr double kPhysicalCouplingMhz = 48.9;
inline constexpr double kPhysicalTauNs = 5.0;
inline constexpr double kSystemQubitGhz = 6.2;
inline constexpr std::size_t kDatasetSize = 42;

/// Base engine used by the presets with `options` overrides applied.
collision::EngineConfig preset_engine(const RunOptions& options, double tau = kNominalTau,
                                      std::size_t max_collisions = kSweepBudget);

/// The 21 coupling offsets of the fig3a sweep, -J/2 ... +J/2.
std::vector<double> fig3a_offsets();

/// The 24 (J1, J2) pairs of the fig4a dataset: J_k = k J / 6, i + j <= 6, i != j.
std::vector<std::array<double, 2>> fig4a_pairs();

/// Engine and coupling for a noisy physical-parameter (fig7*) run.
struct PhysicalSetup {
    collision::EngineConfig engine;
    double coupling = 0.0;  // per ns
    double coupling_phase = 0.0;
};
PhysicalSetup physical_setup(const RunOptions& options);

/// Preparation-error levels for ids fig7a..fig7d.
double fig7_epsilon(const std::string& id);

/// Device parameters of the transmon preset (system qubit first).
physical::TransmonParams reference_transmon();

}  // namespace qsc::cli
