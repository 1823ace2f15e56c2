#include "qsc/classifier.hpp"

#include "qsc/errors.hpp"
#include "qsc/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qsc::classifier {

using collision::ReservoirSpec;

std::string to_string(Label label) { return label == Label::class1 ? "class1" : "class2"; }

Label classify(double sigma_z_ss, double zero_band) {
    return sigma_z_ss >= -zero_band ? Label::class1 : Label::class2;
}

Label classify(const SteadyStateResult& result) { return classify(result.sigma_z_ss, kZeroBand); }

LabeledPoint make_point(std::vector<double> features, const SteadyStateResult& result) {
    return {std::move(features), result.sigma_z_ss, classify(result), result.n_used, result.converged};
}

namespace {

LabeledPoint run_point(std::vector<double> features, const std::vector<ReservoirSpec>& reservoirs,
                       const EngineConfig& cfg) {
    const auto result = collision::steady_state(states::plus_state(), reservoirs, cfg);
    return make_point(std::move(features), result);
}

}  // namespace

std::vector<LabeledPoint> sweep_coupling_pairs(const std::vector<std::array<double, 2>>& pairs,
                                               const EngineConfig& cfg, unsigned jobs) {
    for (const auto& [j1, j2] : pairs) {
        if (!(j1 >= 0.0 && j2 >= 0.0)) throw CouplingOutOfRange("couplings must be non-negative");
    }
    return parallel_map(pairs.size(), jobs, [&](std::size_t i) {
        const auto [j1, j2] = pairs[i];
        const std::vector<ReservoirSpec> reservoirs{
            {.theta = 0.0, .phi = 0.0, .coupling = j1, .weight = 0.5, .noise = std::nullopt},
            {.theta = std::numbers::pi, .phi = 0.0, .coupling = j2, .weight = 0.5, .noise = std::nullopt}};
        EngineConfig point_cfg = cfg;
        point_cfg.seed = derive_seed(cfg.seed, i);
        return run_point({j1, j2}, reservoirs, point_cfg);
    });
}

std::vector<LabeledPoint> sweep_couplings(const std::vector<double>& delta_j_values, double base_j,
                                          const EngineConfig& cfg, unsigned jobs) {
    if (!(base_j >= 0.0)) throw CouplingOutOfRange("base coupling must be non-negative");
    std::vector<std::array<double, 2>> pairs;
    pairs.reserve(delta_j_values.size());
    for (double dj : delta_j_values) {
        // A small relative slack admits grid endpoints that land on ±J/2 after rounding.
        if (!(std::abs(dj) <= 0.5 * base_j * (1.0 + 1e-12))) {
            throw CouplingOutOfRange("|delta_j| " + std::to_string(dj) + " exceeds base_j / 2");
        }
        pairs.push_back({std::max(0.0, 0.5 * base_j + dj), std::max(0.0, 0.5 * base_j - dj)});
    }
    return sweep_coupling_pairs(pairs, cfg, jobs);
}

double phi_scaled(double theta1, double theta2) { return std::numbers::pi - (theta1 + theta2); }

std::vector<std::array<double, 2>> theta_grid(const std::vector<double>& first,
                                              const std::vector<double>& second) {
    std::vector<std::array<double, 2>> out;
    out.reserve(first.size() * second.size());
    for (double a : first)
        for (double b : second) out.push_back({a, b});
    return out;
}

std::vector<double> degree_range(int start, int stop, int step) {
    if (step <= 0) throw InvalidArgument("degree_range: step must be positive");
    std::vector<double> out;
    for (int d = start; d <= stop; d += step) {
        // 180 degrees maps to exactly pi.
        out.push_back(d == 180 ? std::numbers::pi : d * std::numbers::pi / 180.0);
    }
    return out;
}

std::vector<LabeledPoint> evaluate_theta_dataset(const std::vector<std::vector<double>>& tuples,
                                                 double coupling, const EngineConfig& cfg,
                                                 const std::optional<NoiseSpec>& noise,
                                                 unsigned jobs) {
    return parallel_map(tuples.size(), jobs, [&](std::size_t i) {
        const auto& thetas = tuples[i];
        if (thetas.empty()) throw InvalidArgument("theta tuple is empty");
        std::vector<ReservoirSpec> reservoirs;
        const double weight = 1.0 / static_cast<double>(thetas.size());
        for (double t : thetas) {
            reservoirs.push_back(
                {.theta = t, .phi = 0.0, .coupling = coupling, .weight = weight, .noise = noise});
        }
        EngineConfig point_cfg = cfg;
        point_cfg.seed = derive_seed(cfg.seed, i);
        return run_point(thetas, reservoirs, point_cfg);
    });
}

std::vector<LabeledPoint> sweep_thetas(const std::vector<std::array<double, 2>>& pairs,
                                       double coupling, const EngineConfig& cfg, unsigned jobs) {
    std::vector<std::vector<double>> tuples;
    tuples.reserve(pairs.size());
    for (const auto& [a, b] : pairs) tuples.push_back({a, b});
    return evaluate_theta_dataset(tuples, coupling, cfg, std::nullopt, jobs);
}

Sampler Sampler::parse(const std::string& name) {
    if (name == "uniform") return uniform();
    if (name == "clipped-gaussian") return clipped_gaussian(0.5 * std::numbers::pi, 1.0);
    throw UnknownSampler("unknown sampler '" + name + "'");
}

std::string Sampler::name() const {
    return kind == Kind::uniform ? "uniform" : "clipped-gaussian";
}

std::vector<std::vector<double>> generate_theta_dataset(std::size_t n, std::size_t dims,
                                                        const Sampler& sampler, std::uint64_t seed) {
    if (n < 1) throw InvalidArgument("generate_theta_dataset: n must be >= 1");
    if (dims < 1) throw InvalidArgument("generate_theta_dataset: dims must be >= 1");
    RandomStream rng(seed);
    std::vector<std::vector<double>> out(n, std::vector<double>(dims));
    for (auto& tuple : out) {
        for (auto& t : tuple) {
            switch (sampler.kind) {
                case Sampler::Kind::uniform: t = std::numbers::pi * rng.uniform01(); break;
                case Sampler::Kind::clipped_gaussian:
                    t = std::clamp(sampler.mean + sampler.sigma * rng.normal(), 0.0, std::numbers::pi);
                    break;
            }
        }
    }
    return out;
}

}  // namespace qsc::classifier
