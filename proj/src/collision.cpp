#include "qsc/collision.hpp"

#include "qsc/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qsc::collision {

using linalg::cplx;
using linalg::kron;
using linalg::PauliSet;

void NoiseSpec::validate() const {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw InvalidArgument("noise: epsilon outside [0, 1]");
    if (!(eta >= 0.0)) throw InvalidArgument("noise: eta must be non-negative");
    if (!(epsilon - eta >= 0.0 && epsilon + eta <= 1.0)) {
        throw InvalidArgument("noise: epsilon +/- eta must stay within [0, 1]");
    }
}

std::string to_string(MixingMode mode) {
    switch (mode) {
        case MixingMode::convex: return "convex";
        case MixingMode::sequential: return "sequential";
        case MixingMode::stochastic: return "stochastic";
    }
    return "convex";
}

MixingMode parse_mixing_mode(const std::string& name) {
    if (name == "convex") return MixingMode::convex;
    if (name == "sequential") return MixingMode::sequential;
    if (name == "stochastic") return MixingMode::stochastic;
    throw InvalidArgument("unknown mixing mode '" + name + "'");
}

void EngineConfig::validate() const {
    if (!std::isfinite(h)) throw InvalidArgument("engine: h must be finite");
    if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("engine: tau must be > 0");
    if (!(tol > 0.0)) throw InvalidArgument("engine: tol must be > 0");
    if (window < 1) throw InvalidArgument("engine: window must be >= 1");
    if (max_collisions < window) throw InvalidArgument("engine: max_collisions must be >= window");
}

SteadyStateResult SteadyStateResult::from_state(DensityMatrix rho, std::size_t n_used,
                                                bool converged) {
    const double p_e = rho(0, 0).real();
    const double p_g = rho(1, 1).real();
    return SteadyStateResult{std::move(rho), p_e - p_g, p_e, p_g, n_used, converged};
}

ComplexMatrix pair_hamiltonian(double h, double j) {
    if (!(j >= 0.0)) throw InvalidArgument("pair_hamiltonian: coupling must be >= 0");
    const auto id = PauliSet::identity();
    const auto sz = PauliSet::sigma_z();
    // System is the first factor: sigma_+^anc sigma_-^sys = sigma_- ⊗ sigma_+.
    const ComplexMatrix free_part = (kron(sz, id) + kron(id, sz)) * cplx(0.5 * h);
    const ComplexMatrix hop = kron(PauliSet::sigma_minus(), PauliSet::sigma_plus());
    return free_part + (hop + hop.adjoint()) * cplx(j);
}

ComplexMatrix collision_unitary(double h, double j, double tau) {
    return linalg::expm_skew_hermitian(pair_hamiltonian(h, j), tau);
}

namespace {

void require_unitary(const ComplexMatrix& u) {
    if (u.rows() != 4 || u.cols() != 4) {
        throw DimensionMismatch("collision propagator must be 4x4");
    }
    if (const double d = linalg::unitarity_defect(u); !(d < linalg::kUnitaryTol)) {
        throw NonUnitaryPropagator("||U^dagger U - I||_F = " + std::to_string(d));
    }
}

// Tr_anc[U (rho_s ⊗ rho_r) U†] on stack arrays; this is the inner loop of every run.
ComplexMatrix collide(const ComplexMatrix& u, const ComplexMatrix& u_dag, const ComplexMatrix& rho_s,
                      const ComplexMatrix& rho_r) {
    cplx k[4][4], t[4][4];
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) k[r][c] = rho_s(r / 2, c / 2) * rho_r(r % 2, c % 2);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            cplx acc = 0.0;
            for (std::size_t m = 0; m < 4; ++m) acc += u(r, m) * k[m][c];
            t[r][c] = acc;
        }
    ComplexMatrix out(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            cplx acc = 0.0;
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t m = 0; m < 4; ++m) acc += t[2 * i + a][m] * u_dag(m, 2 * j + a);
            out(i, j) = acc;
        }
    return out;
}

}  // namespace

DensityMatrix single_collision(const DensityMatrix& rho_s, const DensityMatrix& rho_r,
                               const ComplexMatrix& u) {
    if (rho_s.dim() != 2 || rho_r.dim() != 2) {
        throw DimensionMismatch("single_collision: system and ancilla must be qubits");
    }
    require_unitary(u);
    return DensityMatrix(collide(u, u.adjoint(), rho_s.matrix(), rho_r.matrix()));
}

DensityMatrix noisy_reservoir_state(const ReservoirSpec& spec, RandomStream& rng) {
    DensityMatrix pure = states::pure_qubit(spec.theta, spec.phi);
    if (!spec.noise) return pure;
    spec.noise->validate();
    const double u = rng.uniform(-1.0, 1.0);
    const double eps = std::clamp(spec.noise->epsilon + u * spec.noise->eta, 0.0, 1.0);
    return DensityMatrix(pure.matrix() * cplx(1.0 - eps) +
                         ComplexMatrix::identity(2) * cplx(0.5 * eps));
}

void validate_reservoirs(std::span<const ReservoirSpec> reservoirs) {
    if (reservoirs.empty()) throw InvalidArgument("at least one reservoir is required");
    double total = 0.0;
    for (const auto& r : reservoirs) {
        if (!(r.theta >= 0.0 && r.theta <= std::numbers::pi)) {
            throw AngleOutOfRange("reservoir theta " + std::to_string(r.theta) + " outside [0, pi]");
        }
        if (!(r.phi >= 0.0 && r.phi < 2.0 * std::numbers::pi)) {
            throw AngleOutOfRange("reservoir phi " + std::to_string(r.phi) + " outside [0, 2pi)");
        }
        if (!(r.coupling >= 0.0) || !std::isfinite(r.coupling)) {
            throw InvalidArgument("reservoir coupling must be >= 0");
        }
        if (!(r.weight >= 0.0 && r.weight <= 1.0)) {
            throw InvalidArgument("reservoir weight outside [0, 1]");
        }
        if (r.noise) r.noise->validate();
        total += r.weight;
    }
    if (!(std::abs(total - 1.0) <= 1e-12)) {
        throw WeightsNotNormalized("reservoir weights sum to " + std::to_string(total));
    }
}

CollisionEngine::CollisionEngine(std::vector<ReservoirSpec> reservoirs, EngineConfig cfg)
    : reservoirs_(std::move(reservoirs)), cfg_(cfg) {
    validate_reservoirs(reservoirs_);
    cfg_.validate();
    unitaries_.reserve(reservoirs_.size());
    for (const auto& r : reservoirs_) {
        auto u = collision_unitary(cfg_.h, r.coupling, cfg_.tau);
        require_unitary(u);
        adjoints_.push_back(u.adjoint());
        unitaries_.push_back(std::move(u));
        clean_states_.push_back(states::pure_qubit(r.theta, r.phi));
    }
}

bool CollisionEngine::has_noise() const noexcept {
    for (const auto& r : reservoirs_)
        if (r.is_noisy()) return true;
    return false;
}

DensityMatrix CollisionEngine::ancilla(std::size_t i, RandomStream& rng) const {
    return reservoirs_[i].is_noisy() ? noisy_reservoir_state(reservoirs_[i], rng) : clean_states_[i];
}

ComplexMatrix CollisionEngine::apply(std::size_t i, const ComplexMatrix& rho_s,
                                     const ComplexMatrix& rho_r) const {
    return collide(unitaries_[i], adjoints_[i], rho_s, rho_r);
}

// Random draws per step, in order: stochastic mode draws the channel index
// first; then every contacted noisy reservoir draws one variate in list order.
DensityMatrix CollisionEngine::step(const DensityMatrix& rho, RandomStream& rng) const {
    if (rho.dim() != 2) throw DimensionMismatch("step: system must be a qubit");
    switch (cfg_.mixing_mode) {
        case MixingMode::convex: {
            ComplexMatrix acc = ComplexMatrix::zeros(2, 2);
            for (std::size_t i = 0; i < reservoirs_.size(); ++i) {
                if (reservoirs_[i].weight == 0.0) continue;
                acc += apply(i, rho.matrix(), ancilla(i, rng).matrix()) * cplx(reservoirs_[i].weight);
            }
            return DensityMatrix(std::move(acc));
        }
        case MixingMode::sequential: {
            ComplexMatrix cur = rho.matrix();
            for (std::size_t i = 0; i < reservoirs_.size(); ++i) {
                if (reservoirs_[i].weight == 0.0) continue;
                cur = apply(i, cur, ancilla(i, rng).matrix());
            }
            return DensityMatrix(std::move(cur));
        }
        case MixingMode::stochastic: {
            std::vector<double> weights;
            weights.reserve(reservoirs_.size());
            for (const auto& r : reservoirs_) weights.push_back(r.weight);
            const std::size_t i = rng.categorical(weights);
            return DensityMatrix(apply(i, rho.matrix(), ancilla(i, rng).matrix()));
        }
    }
    throw InvalidArgument("step: unknown mixing mode");
}

DensityMatrix step(const DensityMatrix& rho_s, std::span<const ReservoirSpec> reservoirs,
                   const EngineConfig& cfg, RandomStream& rng) {
    const CollisionEngine engine({reservoirs.begin(), reservoirs.end()}, cfg);
    return engine.step(rho_s, rng);
}

namespace {

// Removes rounding drift accumulated over long runs: restores exact
// Hermiticity and unit trace. A single step() is left untouched.
DensityMatrix settle(const DensityMatrix& rho) {
    ComplexMatrix m = (rho.matrix() + rho.matrix().adjoint()) * cplx(0.5);
    m *= cplx(1.0 / m.trace().real());
    return DensityMatrix(std::move(m));
}

template <class OnState>
SteadyStateResult iterate(const DensityMatrix& rho0, std::span<const ReservoirSpec> reservoirs,
                          const EngineConfig& cfg, OnState&& on_state) {
    if (rho0.dim() != 2) throw DimensionMismatch("evolve: initial state must be a qubit");
    const CollisionEngine engine({reservoirs.begin(), reservoirs.end()}, cfg);
    RandomStream rng(cfg.seed);

    DensityMatrix rho = rho0;
    on_state(std::size_t{0}, rho);
    std::size_t streak = 0;
    std::optional<std::size_t> converged_at;
    std::size_t n = 0;
    while (n < cfg.max_collisions) {
        DensityMatrix next = settle(engine.step(rho, rng));
        ++n;
        const double moved = linalg::trace_distance(next.matrix(), rho.matrix());
        rho = std::move(next);
        on_state(n, rho);
        streak = moved < cfg.tol ? streak + 1 : 0;
        if (!converged_at && streak >= cfg.window) {
            converged_at = n;
            if (cfg.stop_on_converge) break;
        }
    }
    return SteadyStateResult::from_state(std::move(rho), converged_at.value_or(n),
                                         converged_at.has_value());
}

}  // namespace

Evolution evolve(const DensityMatrix& rho0, std::span<const ReservoirSpec> reservoirs,
                 const EngineConfig& cfg, const std::optional<DensityMatrix>& target) {
    Trajectory traj;
    auto result = iterate(rho0, reservoirs, cfg, [&](std::size_t n, const DensityMatrix& rho) {
        TrajectoryRecord rec{n, states::magnetization(rho), states::bloch_vector(rho), std::nullopt};
        if (target) rec.fidelity_to_target = states::fidelity(*target, rho);
        traj.push_back(rec);
    });
    return {std::move(traj), std::move(result)};
}

SteadyStateResult steady_state(const DensityMatrix& rho0, std::span<const ReservoirSpec> reservoirs,
                               const EngineConfig& cfg) {
    return iterate(rho0, reservoirs, cfg, [](std::size_t, const DensityMatrix&) {});
}

std::array<double, 3> AffineMap::apply(const std::array<double, 3>& b) const {
    std::array<double, 3> out = c;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) out[i] += m[i][j] * b[j];
    return out;
}

AffineMap affine_representation(std::span<const ReservoirSpec> reservoirs, const EngineConfig& cfg) {
    for (const auto& r : reservoirs) {
        if (r.is_noisy()) throw NoiseNotSupported("affine_representation: reservoir noise enabled");
    }
    EngineConfig probe_cfg = cfg;
    if (probe_cfg.mixing_mode == MixingMode::stochastic) probe_cfg.mixing_mode = MixingMode::convex;
    const CollisionEngine engine({reservoirs.begin(), reservoirs.end()}, probe_cfg);
    RandomStream unused(cfg.seed);

    auto image = [&](const BlochVector& b) {
        const auto out = states::bloch_vector(engine.step(states::from_bloch(b), unused));
        return std::array<double, 3>{out.x, out.y, out.z};
    };
    AffineMap map;
    map.c = image({0.0, 0.0, 0.0});
    const std::array<BlochVector, 3> axes{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    for (std::size_t k = 0; k < 3; ++k) {
        const auto col = image(axes[k]);
        for (std::size_t i = 0; i < 3; ++i) map.m[i][k] = col[i] - map.c[i];
    }
    return map;
}

SteadyStateResult steady_state_oracle(std::span<const ReservoirSpec> reservoirs,
                                      const EngineConfig& cfg) {
    const AffineMap map = affine_representation(reservoirs, cfg);
    Eigen::Matrix3d a;
    Eigen::Vector3d rhs;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) a(i, j) = (i == j ? 1.0 : 0.0) - map.m[i][j];
        rhs(i) = map.c[i];
    }
    Eigen::FullPivLU<Eigen::Matrix3d> lu(a);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible()) throw SingularSystem("steady_state_oracle: I - M is singular");
    const Eigen::Vector3d b = lu.solve(rhs);
    return SteadyStateResult::from_state(states::from_bloch({b(0), b(1), b(2)}), 0, true);
}

}  // namespace qsc::collision
