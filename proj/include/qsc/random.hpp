// random.hpp: reproducible random streams.
//
// Generator: std::mt19937_64, whose output sequence is fixed by the C++
// standard. The standard distributions are implementation-defined, so the
// variates below are derived from raw 64-bit draws with explicit formulas,
// making every seeded run bit-identical across standard libraries.

#pragma once

#include <cstdint>
#include <random>

namespace qsc {

inline constexpr std::uint64_t kDefaultSeed = 0xC0111DEULL;

/// SplitMix64 finalizer. Used to derive independent per-task seeds.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

/// Seed for sub-stream `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform01();
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi);
    /// Standard normal via Box-Muller (cached second variate).
    double normal();
    /// Index i with probability weights[i] / Σ weights.
    template <class Range>
    std::size_t categorical(const Range& weights);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

template <class Range>
std::size_t RandomStream::categorical(const Range& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    const double u = uniform01() * total;
    double acc = 0.0;
    std::size_t i = 0;
    std::size_t last_positive = 0;
    for (double w : weights) {
        if (w > 0.0) last_positive = i;
        acc += w;
        if (u < acc) return i;
        ++i;
    }
    return last_positive;
}

}  // namespace qsc
