// classifier.hpp: steady-state class labels, parameter sweeps, labeled
// datasets and a linear-separability check.

#pragma once

#include "qsc/collision.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qsc::classifier {

using collision::EngineConfig;
using collision::NoiseSpec;
using collision::SteadyStateResult;

/// Class1 iff the steady magnetization is >= 0 (zero is Class1).
enum class Label { class1, class2 };

/// Iterated steady states carry residuals of order tol / (1 - contraction);
/// magnetizations this close to zero are treated as zero.
inline constexpr double kZeroBand = 1e-8;

std::string to_string(Label label);
/// Class1 iff sigma_z_ss >= -zero_band.
Label classify(double sigma_z_ss, double zero_band = 0.0);
/// Uses kZeroBand.
Label classify(const SteadyStateResult& result);

struct LabeledPoint {
    std::vector<double> features;
    double sigma_z_ss = 0.0;
    Label label = Label::class1;
    std::size_t n_used = 0;
    bool converged = true;
};

LabeledPoint make_point(std::vector<double> features, const SteadyStateResult& result);

/// Two reservoirs |up> (J1 = base_j/2 + dJ) and |down> (J2 = base_j/2 - dJ)
/// with equal weights; features are (J1, J2). Throws CouplingOutOfRange
/// when |dJ| > base_j / 2.
std::vector<LabeledPoint> sweep_couplings(const std::vector<double>& delta_j_values, double base_j,
                                          const EngineConfig& cfg, unsigned jobs = 1);

/// Arbitrary coupling pairs against the same |up> / |down> reservoirs.
std::vector<LabeledPoint> sweep_coupling_pairs(const std::vector<std::array<double, 2>>& pairs,
                                               const EngineConfig& cfg, unsigned jobs = 1);

/// pi - (theta_1 + theta_2), the abscissa used for theta-sweep plots.
double phi_scaled(double theta1, double theta2);

/// All (a, b) pairs with a from `first` (outer) and b from `second` (inner).
std::vector<std::array<double, 2>> theta_grid(const std::vector<double>& first,
                                              const std::vector<double>& second);

/// {start, start + step, ..., stop} in degrees, converted to radians.
std::vector<double> degree_range(int start, int stop, int step);

/// Two reservoirs at (theta_1, theta_2) with equal coupling and weights.
std::vector<LabeledPoint> sweep_thetas(const std::vector<std::array<double, 2>>& pairs,
                                       double coupling, const EngineConfig& cfg, unsigned jobs = 1);

/// Steady-state labels for N-reservoir angle tuples (equal couplings and
/// weights 1/N). Point i runs with seed derive_seed(cfg.seed, i), so noisy
/// datasets do not depend on `jobs`.
std::vector<LabeledPoint> evaluate_theta_dataset(const std::vector<std::vector<double>>& tuples,
                                                 double coupling, const EngineConfig& cfg,
                                                 const std::optional<NoiseSpec>& noise = std::nullopt,
                                                 unsigned jobs = 1);

struct Sampler {
    enum class Kind { uniform, clipped_gaussian };
    Kind kind = Kind::uniform;
    double mean = 0.0;
    double sigma = 1.0;

    static Sampler uniform() { return {Kind::uniform, 0.0, 0.0}; }
    static Sampler clipped_gaussian(double mean, double sigma) {
        return {Kind::clipped_gaussian, mean, sigma};
    }
    /// "uniform" or "clipped-gaussian" (mean pi/2, sigma 1); else UnknownSampler.
    static Sampler parse(const std::string& name);
    std::string name() const;
};

/// `n` tuples in [0, pi]^dims drawn from `sampler` with a stream seeded by `seed`.
std::vector<std::vector<double>> generate_theta_dataset(std::size_t n, std::size_t dims,
                                                        const Sampler& sampler, std::uint64_t seed);

struct SeparabilityReport {
    bool separable = false;
    /// Unit normal and offset in the original feature coordinates; present
    /// iff separable. Class1 lies on the positive side.
    std::vector<double> w;
    double b = 0.0;
    double margin = 0.0;
    /// Perceptron epochs run (the cap when not separable).
    std::size_t iterations = 0;
};

inline constexpr std::size_t kDefaultPerceptronEpochs = 100000;

/// Perceptron on standardized features. A "not separable" verdict means no
/// separating hyperplane was found within `max_epochs` passes.
SeparabilityReport check_linear_separability(const std::vector<LabeledPoint>& points,
                                             std::size_t max_epochs = kDefaultPerceptronEpochs);

}  // namespace qsc::classifier
