// collision.hpp: repeated-interaction (collision model) dynamics of one
// system qubit coupled to one or more information reservoirs.
//
// Each collision: the system meets a fresh ancilla prepared in the reservoir
// state, the pair evolves under
//
//     H = (h/2)(sigma_z^anc + sigma_z^sys) + J (sigma_+^anc sigma_-^sys + h.c.)
//
// for a time tau, and the ancilla is traced out. With several reservoirs the
// per-collision map is mixed according to EngineConfig::mixing_mode.

#pragma once

#include "qsc/linalg.hpp"
#include "qsc/random.hpp"
#include "qsc/states.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qsc::collision {

using linalg::ComplexMatrix;
using states::BlochVector;
using states::DensityMatrix;

/// Preparation error of a reservoir ancilla: each preparation is depolarized
/// by eps_eta = epsilon + u * eta with u uniform on [-1, 1].
struct NoiseSpec {
    double epsilon = 0.0;
    double eta = 0.0;

    /// Throws InvalidArgument unless 0 <= epsilon - eta and epsilon + eta <= 1.
    void validate() const;
};

struct ReservoirSpec {
    double theta = 0.0;   // radians, [0, pi]
    double phi = 0.0;     // radians, [0, 2 pi)
    double coupling = 0.0;
    double weight = 1.0;  // mixture probability q_i
    std::optional<NoiseSpec> noise;

    bool is_noisy() const noexcept { return noise.has_value(); }
};

enum class MixingMode { convex, sequential, stochastic };

std::string to_string(MixingMode mode);
/// Throws InvalidArgument for unknown names.
MixingMode parse_mixing_mode(const std::string& name);

struct EngineConfig {
    double h = 1.0;
    double tau = 0.5;
    std::size_t max_collisions = 5000;
    double tol = 1e-9;
    std::size_t window = 10;
    MixingMode mixing_mode = MixingMode::convex;
    std::uint64_t seed = kDefaultSeed;
    /// When false the run always performs max_collisions collisions; the
    /// convergence test is still evaluated and reported.
    bool stop_on_converge = true;

    void validate() const;
};

struct TrajectoryRecord {
    std::size_t n = 0;
    double sigma_z = 0.0;
    BlochVector bloch;
    std::optional<double> fidelity_to_target;
};

using Trajectory = std::vector<TrajectoryRecord>;

struct SteadyStateResult {
    DensityMatrix rho_ss;
    double sigma_z_ss = 0.0;
    double p_e = 0.0;
    double p_g = 0.0;
    /// Collision count at which the convergence test first passed, or the
    /// number of collisions performed when it never did.
    std::size_t n_used = 0;
    bool converged = false;

    static SteadyStateResult from_state(DensityMatrix rho, std::size_t n_used, bool converged);
};

struct Evolution {
    Trajectory trajectory;
    SteadyStateResult result;
};

/// The pair Hamiltonian above as a 4x4 matrix on (system ⊗ ancilla). Requires j >= 0.
ComplexMatrix pair_hamiltonian(double h, double j);

/// e^{-i H tau} for the pair Hamiltonian.
ComplexMatrix collision_unitary(double h, double j, double tau);

/// Tr_anc[U (rho_s ⊗ rho_r) U^dagger]. Throws NonUnitaryPropagator if
/// ||U^dagger U - I||_F >= 1e-12.
DensityMatrix single_collision(const DensityMatrix& rho_s, const DensityMatrix& rho_r,
                               const ComplexMatrix& u);

/// Reservoir ancilla state for one preparation. Without a NoiseSpec this is
/// the pure state at (theta, phi) and `rng` is not touched.
DensityMatrix noisy_reservoir_state(const ReservoirSpec& spec, RandomStream& rng);

/// Range checks on every spec plus Σ weights = 1 (WeightsNotNormalized).
void validate_reservoirs(std::span<const ReservoirSpec> reservoirs);

/// Prepared per-run state: one verified unitary per reservoir plus the
/// noise-free ancilla states. Immutable after construction.
class CollisionEngine {
public:
    CollisionEngine(std::vector<ReservoirSpec> reservoirs, EngineConfig cfg);

    DensityMatrix step(const DensityMatrix& rho, RandomStream& rng) const;

    const std::vector<ReservoirSpec>& reservoirs() const noexcept { return reservoirs_; }
    const EngineConfig& config() const noexcept { return cfg_; }
    const std::vector<ComplexMatrix>& unitaries() const noexcept { return unitaries_; }
    bool has_noise() const noexcept;

private:
    DensityMatrix ancilla(std::size_t i, RandomStream& rng) const;
    ComplexMatrix apply(std::size_t i, const ComplexMatrix& rho_s, const ComplexMatrix& rho_r) const;

    std::vector<ReservoirSpec> reservoirs_;
    EngineConfig cfg_;
    std::vector<ComplexMatrix> unitaries_;
    std::vector<ComplexMatrix> adjoints_;
    std::vector<DensityMatrix> clean_states_;
};

/// One collision step from free arguments (builds the unitaries each call).
DensityMatrix step(const DensityMatrix& rho_s, std::span<const ReservoirSpec> reservoirs,
                   const EngineConfig& cfg, RandomStream& rng);

/// Iterate until trace_distance(rho_{n+1}, rho_n) < tol for `window`
/// consecutive collisions or max_collisions is reached. The trajectory holds
/// one record per collision, starting with n = 0 for rho0.
Evolution evolve(const DensityMatrix& rho0, std::span<const ReservoirSpec> reservoirs,
                 const EngineConfig& cfg, const std::optional<DensityMatrix>& target = std::nullopt);

/// Same iteration as evolve() without recording a trajectory.
SteadyStateResult steady_state(const DensityMatrix& rho0, std::span<const ReservoirSpec> reservoirs,
                               const EngineConfig& cfg);

/// The one-step map acting on Bloch vectors: b -> M b + c.
struct AffineMap {
    std::array<std::array<double, 3>, 3> m{};
    std::array<double, 3> c{};

    std::array<double, 3> apply(const std::array<double, 3>& b) const;
};

/// Probes the noise-free step map on I/2 and I/2 + sigma_k/2. Stochastic mode
/// is represented by its expectation, the convex map. Throws NoiseNotSupported
/// when any reservoir is noisy.
AffineMap affine_representation(std::span<const ReservoirSpec> reservoirs, const EngineConfig& cfg);

/// Fixed point of the affine map, solving (I - M) b = c. Throws
/// SingularSystem when I - M is (numerically) singular.
SteadyStateResult steady_state_oracle(std::span<const ReservoirSpec> reservoirs,
                                      const EngineConfig& cfg);

}  // namespace qsc::collision
