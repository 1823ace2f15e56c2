// linalg.hpp: dense complex matrices for the 2x2 / 4x4 operators of the
// collision model: products, adjoints, Kronecker products, partial traces,
// Hermitian exponentials and norms.
//
// Tensor ordering convention: in every two-qubit operator the SYSTEM qubit
// is the first Kronecker factor and the ancilla the second. Basis index 0
// is |up>, so |up,down> is index 1 and |down,up> is index 2.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace qsc::linalg {

using cplx = std::complex<double>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-12;

/// Row-major dense complex matrix. Entries are always finite.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
    /// Row-by-row literal, e.g. {{1, 0}, {0, -1}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static ComplexMatrix diagonal(const std::vector<cplx>& d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    const std::vector<cplx>& entries() const noexcept { return data_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    ComplexMatrix adjoint() const;
    cplx trace() const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// Single-qubit operator constants in the basis (|up>, |down>).
struct PauliSet {
    static ComplexMatrix identity();
    static ComplexMatrix sigma_x();
    static ComplexMatrix sigma_y();
    static ComplexMatrix sigma_z();
    /// |up><down| = (sigma_x + i sigma_y) / 2
    static ComplexMatrix sigma_plus();
    static ComplexMatrix sigma_minus();
};

enum class Subsystem { first, second };

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduce a 4x4 two-qubit operator to the factor named by `keep`.
ComplexMatrix partial_trace(const ComplexMatrix& rho, Subsystem keep);

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending; columns of
/// `vectors` are the orthonormal eigenvectors.
struct HermitianEigen {
    std::vector<double> values;
    ComplexMatrix vectors;
};

HermitianEigen hermitian_eigen(const ComplexMatrix& h);

/// e^{-i h t} for Hermitian h, via eigendecomposition. Throws
/// NonHermitianInput when ||h - h^dagger||_F exceeds kHermitianTol.
ComplexMatrix expm_skew_hermitian(const ComplexMatrix& h, double t);

/// ½ Σ |λ_k(a - b)|.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius_norm(const ComplexMatrix& a);
double hermiticity_defect(const ComplexMatrix& a);
/// ||U^dagger U - I||_F
double unitarity_defect(const ComplexMatrix& u);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qsc::linalg
