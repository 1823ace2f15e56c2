#include "qsc/linalg.hpp"

#include "qsc/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace qsc::linalg {

namespace {

void require_finite(const std::vector<cplx>& v) {
    for (const auto& z : v) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw InvalidArgument("ComplexMatrix: non-finite entry");
        }
    }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch(std::string(op) + ": shapes " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " and " + std::to_string(b.rows()) +
                                "x" + std::to_string(b.cols()));
    }
}

using EigenMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Eigenvalues of a 2x2 Hermitian matrix, ascending.
std::pair<double, double> eigenvalues_2x2(const ComplexMatrix& h) {
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), std::abs(h(0, 1)));
    return {mean - radius, mean + radius};
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) throw InvalidArgument("ComplexMatrix: zero dimension");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw InvalidArgument("ComplexMatrix: zero dimension");
    if (data_.size() != rows * cols) {
        throw DimensionMismatch("ComplexMatrix: entries length != rows * cols");
    }
    require_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    if (rows_ == 0 || cols_ == 0) throw InvalidArgument("ComplexMatrix: zero dimension");
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionMismatch("ComplexMatrix: ragged literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
    require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cplx>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    require_finite(m.data_);
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

cplx ComplexMatrix::trace() const {
    if (!is_square()) throw DimensionMismatch("trace: matrix is not square");
    cplx t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    require_same_shape(*this, o, "operator+");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    require_same_shape(*this, o, "operator-");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("operator*: inner dimensions " + std::to_string(a.cols()) +
                                " and " + std::to_string(b.rows()));
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

ComplexMatrix PauliSet::identity() { return ComplexMatrix::identity(2); }
ComplexMatrix PauliSet::sigma_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix PauliSet::sigma_y() { return {{0.0, cplx(0, -1)}, {cplx(0, 1), 0.0}}; }
ComplexMatrix PauliSet::sigma_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
ComplexMatrix PauliSet::sigma_plus() { return {{0.0, 1.0}, {0.0, 0.0}}; }
ComplexMatrix PauliSet::sigma_minus() { return {{0.0, 0.0}, {1.0, 0.0}}; }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, Subsystem keep) {
    if (rho.rows() != 4 || rho.cols() != 4) {
        throw DimensionMismatch("partial_trace: expected a 4x4 two-qubit operator");
    }
    ComplexMatrix out(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k) {
                if (keep == Subsystem::first) {
                    out(i, j) += rho(2 * i + k, 2 * j + k);
                } else {
                    out(i, j) += rho(2 * k + i, 2 * k + j);
                }
            }
    return out;
}

HermitianEigen hermitian_eigen(const ComplexMatrix& h) {
    if (!h.is_square()) throw DimensionMismatch("hermitian_eigen: matrix is not square");
    const auto n = static_cast<Eigen::Index>(h.rows());
    Eigen::Map<const EigenMatrix> view(h.entries().data(), n, n);
    // Only the lower triangle is read; symmetrize so tiny asymmetries average out.
    EigenMatrix herm = 0.5 * (view + view.adjoint());
    Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(herm);
    if (solver.info() != Eigen::Success) throw InvalidArgument("hermitian_eigen: no convergence");

    HermitianEigen out{std::vector<double>(h.rows()), ComplexMatrix(h.rows(), h.rows())};
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
        for (Eigen::Index j = 0; j < n; ++j)
            out.vectors(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                solver.eigenvectors()(i, j);
    }
    return out;
}

ComplexMatrix expm_skew_hermitian(const ComplexMatrix& h, double t) {
    if (!h.is_square()) throw DimensionMismatch("expm_skew_hermitian: matrix is not square");
    const double defect = hermiticity_defect(h);
    if (!(defect <= kHermitianTol)) {
        throw NonHermitianInput("expm_skew_hermitian: ||h - h^dagger||_F = " +
                                std::to_string(defect));
    }
    const auto eig = hermitian_eigen(h);
    std::vector<cplx> phases(eig.values.size());
    for (std::size_t k = 0; k < phases.size(); ++k) phases[k] = std::polar(1.0, -eig.values[k] * t);
    return eig.vectors * ComplexMatrix::diagonal(phases) * eig.vectors.adjoint();
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "trace_distance");
    const ComplexMatrix diff = a - b;
    if (diff.rows() == 2) {
        const auto [lo, hi] = eigenvalues_2x2(diff);
        return 0.5 * (std::abs(lo) + std::abs(hi));
    }
    double sum = 0.0;
    for (double v : hermitian_eigen(diff).values) sum += std::abs(v);
    return 0.5 * sum;
}

double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

double hermiticity_defect(const ComplexMatrix& a) {
    if (!a.is_square()) throw DimensionMismatch("hermiticity_defect: matrix is not square");
    return frobenius_norm(a - a.adjoint());
}

double unitarity_defect(const ComplexMatrix& u) {
    if (!u.is_square()) throw DimensionMismatch("unitarity_defect: matrix is not square");
    return frobenius_norm(u.adjoint() * u - ComplexMatrix::identity(u.rows()));
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

}  // namespace qsc::linalg
