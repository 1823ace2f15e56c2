#include "qsc/states.hpp"

#include "qsc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qsc::states {

using linalg::cplx;
using linalg::PauliSet;

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (auto why = validate_density(m_); !why.empty()) throw InvalidState(why);
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    return DensityMatrix(ComplexMatrix::identity(dim) * cplx(1.0 / static_cast<double>(dim)));
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

double min_eigenvalue(const ComplexMatrix& h) {
    if (h.rows() == 2 && h.cols() == 2) {
        const double a = h(0, 0).real();
        const double d = h(1, 1).real();
        return 0.5 * (a + d) - std::hypot(0.5 * (a - d), std::abs(h(0, 1)));
    }
    return linalg::hermitian_eigen(h).values.front();
}

std::string validate_density(const ComplexMatrix& m) {
    if (!m.is_square() || (m.rows() != 2 && m.rows() != 4)) {
        return "density matrix must be 2x2 or 4x4";
    }
    if (const double d = linalg::hermiticity_defect(m); !(d <= kHermitianTol)) {
        return "density matrix not Hermitian (defect " + std::to_string(d) + ")";
    }
    if (const double t = m.trace().real(); !(std::abs(t - 1.0) <= kTraceTol)) {
        return "density matrix trace " + std::to_string(t) + " != 1";
    }
    if (const double lo = min_eigenvalue(m); !(lo >= -kPositivityTol)) {
        return "density matrix has negative eigenvalue " + std::to_string(lo);
    }
    return {};
}

DensityMatrix pure_qubit(double theta, double phi) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
        throw AngleOutOfRange("pure_qubit: theta " + std::to_string(theta) + " outside [0, pi]");
    }
    if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) {
        throw AngleOutOfRange("pure_qubit: phi " + std::to_string(phi) + " outside [0, 2pi)");
    }
    const cplx a = std::cos(0.5 * theta);
    const cplx b = std::polar(std::sin(0.5 * theta), phi);
    return DensityMatrix(ComplexMatrix{{a * std::conj(a), a * std::conj(b)},
                                       {b * std::conj(a), b * std::conj(b)}});
}

DensityMatrix plus_state() { return pure_qubit(0.5 * std::numbers::pi, 0.0); }

double magnetization(const DensityMatrix& rho) {
    if (rho.dim() != 2) throw DimensionMismatch("magnetization: expected a qubit state");
    return rho(0, 0).real() - rho(1, 1).real();
}

BlochVector bloch_vector(const DensityMatrix& rho) {
    if (rho.dim() != 2) throw DimensionMismatch("bloch_vector: expected a qubit state");
    // Tr(sigma_x rho) = 2 Re rho_10, Tr(sigma_y rho) = 2 Im rho_10
    return {2.0 * rho(1, 0).real(), 2.0 * rho(1, 0).imag(), rho(0, 0).real() - rho(1, 1).real()};
}

DensityMatrix from_bloch(const BlochVector& b) {
    ComplexMatrix m = PauliSet::identity() + PauliSet::sigma_x() * cplx(b.x) +
                      PauliSet::sigma_y() * cplx(b.y) + PauliSet::sigma_z() * cplx(b.z);
    return DensityMatrix(m * cplx(0.5));
}

double purity(const DensityMatrix& rho) { return (rho.matrix() * rho.matrix()).trace().real(); }

namespace {

double det2(const ComplexMatrix& m) { return (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real(); }

}  // namespace

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw DimensionMismatch("fidelity: dimension mismatch");
    if (rho.dim() == 2) {
        const double overlap = (rho.matrix() * sigma.matrix()).trace().real();
        const double dets = std::max(0.0, det2(rho.matrix())) * std::max(0.0, det2(sigma.matrix()));
        return std::clamp(std::sqrt(std::max(0.0, overlap + 2.0 * std::sqrt(dets))), 0.0, 1.0);
    }
    // General route: F = Σ sqrt(λ_k) over eigenvalues of sqrt(rho) sigma sqrt(rho).
    const auto eig = linalg::hermitian_eigen(rho.matrix());
    std::vector<cplx> roots(eig.values.size());
    for (std::size_t k = 0; k < roots.size(); ++k) roots[k] = std::sqrt(std::max(0.0, eig.values[k]));
    const ComplexMatrix sqrt_rho =
        eig.vectors * ComplexMatrix::diagonal(roots) * eig.vectors.adjoint();
    double f = 0.0;
    for (double v : linalg::hermitian_eigen(sqrt_rho * sigma.matrix() * sqrt_rho).values) {
        f += std::sqrt(std::max(0.0, v));
    }
    return std::clamp(f, 0.0, 1.0);
}

DensityMatrix mixed_target(const std::vector<MixtureComponent>& components) {
    if (components.empty()) throw ProbabilityNotNormalized("mixed_target: no components");
    double total = 0.0;
    for (const auto& c : components) {
        if (!(c.p >= 0.0)) throw ProbabilityNotNormalized("mixed_target: negative weight");
        total += c.p;
    }
    if (!(std::abs(total - 1.0) <= 1e-12)) {
        throw ProbabilityNotNormalized("mixed_target: weights sum to " + std::to_string(total));
    }
    ComplexMatrix acc = ComplexMatrix::zeros(2, 2);
    for (const auto& c : components) acc += pure_qubit(c.theta, c.phi).matrix() * cplx(c.p);
    return DensityMatrix(std::move(acc));
}

}  // namespace qsc::states
