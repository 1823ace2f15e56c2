// states.hpp: qubit states, validation and observables.
//
// Basis convention: |up> = (1, 0)^T is index 0, so <sigma_z> = rho_00 - rho_11.

#pragma once

#include "qsc/linalg.hpp"

#include <vector>

namespace qsc::states {

using linalg::ComplexMatrix;

inline constexpr double kTraceTol = 1e-12;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;

/// A validated density matrix of dimension 2 or 4: Hermitian, unit trace and
/// positive semidefinite, each within the tolerances above.
class DensityMatrix {
public:
    /// Throws InvalidState (or DimensionMismatch) if `m` is not a valid state.
    explicit DensityMatrix(ComplexMatrix m);

    std::size_t dim() const noexcept { return m_.rows(); }
    const ComplexMatrix& matrix() const noexcept { return m_; }
    linalg::cplx operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

    /// I / dim
    static DensityMatrix maximally_mixed(std::size_t dim = 2);

private:
    ComplexMatrix m_;
};

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
};

/// Smallest eigenvalue of a Hermitian matrix (closed form for 2x2).
double min_eigenvalue(const ComplexMatrix& h);

/// Describes why `m` is not a valid density matrix, or returns empty.
std::string validate_density(const ComplexMatrix& m);

/// |psi><psi| with |psi> = cos(theta/2)|up> + e^{i phi} sin(theta/2)|down>.
/// theta in [0, pi], phi in [0, 2 pi); otherwise AngleOutOfRange.
DensityMatrix pure_qubit(double theta, double phi = 0.0);

/// |+><+|, the unpolarized starting state of every run.
DensityMatrix plus_state();

double magnetization(const DensityMatrix& rho);
BlochVector bloch_vector(const DensityMatrix& rho);
DensityMatrix from_bloch(const BlochVector& b);
double purity(const DensityMatrix& rho);

/// Uhlmann fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)). Qubits use the
/// closed form sqrt(Tr(rho sigma) + 2 sqrt(det rho det sigma)).
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

struct MixtureComponent {
    double theta = 0.0;
    double p = 0.0;
    double phi = 0.0;
};

/// Σ p_i |psi(theta_i, phi_i)><psi(theta_i, phi_i)|. Weights must be
/// non-negative and sum to 1 within 1e-12 (ProbabilityNotNormalized).
DensityMatrix mixed_target(const std::vector<MixtureComponent>& components);

}  // namespace qsc::states
