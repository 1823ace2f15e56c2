#include "qsc/errors.hpp"
#include "qsc/linalg.hpp"
#include "support.hpp"

#include <doctest.h>

#include <limits>

using namespace qsc::linalg;
using qsc_test::max_abs_diff;

TEST_SUITE("linalg") {

TEST_CASE("construction validates shape and finiteness") {
    CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<cplx>(3)), qsc::DimensionMismatch);
    std::vector<cplx> bad(4);
    bad[2] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(ComplexMatrix(2, 2, bad), qsc::InvalidArgument);
    CHECK_THROWS_AS((ComplexMatrix{{1, 0}, {0}}), qsc::DimensionMismatch);
    ComplexMatrix m{{1, 2}, {3, 4}};
    CHECK(m.rows() == 2);
    CHECK(m(1, 0) == cplx(3));
}

TEST_CASE("pauli constants") {
    const auto sp = PauliSet::sigma_plus();
    const auto expect = (PauliSet::sigma_x() + cplx(0, 1) * PauliSet::sigma_y()) * 0.5;
    CHECK(max_abs_diff(sp, expect) == 0.0);
    CHECK(max_abs_diff(PauliSet::sigma_minus(), sp.adjoint()) == 0.0);
    const auto z = PauliSet::sigma_z();
    CHECK(z(0, 0) == cplx(1));
    CHECK(z(1, 1) == cplx(-1));
    CHECK(z(0, 1) == cplx(0));
}

TEST_CASE("kron") {
    CHECK(max_abs_diff(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4)) ==
          0.0);
    CHECK(max_abs_diff(kron(PauliSet::sigma_z(), ComplexMatrix::identity(2)),
                       ComplexMatrix::diagonal({1, 1, -1, -1})) == 0.0);
    const ComplexMatrix up{{1, 0}, {0, 0}};
    const ComplexMatrix down{{0, 0}, {0, 1}};
    CHECK(max_abs_diff(kron(up, down), ComplexMatrix::diagonal({0, 1, 0, 0})) == 0.0);
    CHECK(kron(ComplexMatrix(2, 3), ComplexMatrix(3, 1)).rows() == 6);
}

TEST_CASE("expm_skew_hermitian") {
    const ComplexMatrix h{{0.3, cplx(0.1, -0.2)}, {cplx(0.1, 0.2), -0.7}};
    CHECK(max_abs_diff(expm_skew_hermitian(h, 0.0), ComplexMatrix::identity(2)) < 1e-15);

    const auto d = expm_skew_hermitian(ComplexMatrix::diagonal({0.4, -1.3}), 2.0);
    CHECK(std::abs(d(0, 0) - std::exp(cplx(0, -0.8))) < 1e-14);
    CHECK(std::abs(d(1, 1) - std::exp(cplx(0, 2.6))) < 1e-14);
    CHECK(std::abs(d(0, 1)) < 1e-15);

    // Exchange Hamiltonian with h = 1, J = 0.1, tau = 0.5.
    ComplexMatrix pair = kron(PauliSet::sigma_z(), ComplexMatrix::identity(2)) * 0.5 +
                         kron(ComplexMatrix::identity(2), PauliSet::sigma_z()) * 0.5;
    pair(1, 2) = 0.1;
    pair(2, 1) = 0.1;
    const auto u = expm_skew_hermitian(pair, 0.5);
    CHECK(unitarity_defect(u) < 1e-12);
    CHECK(std::abs(u(1, 2)) == doctest::Approx(std::sin(0.05)).epsilon(1e-13));

    const ComplexMatrix nh{{0, 1}, {0, 0}};
    CHECK_THROWS_AS(expm_skew_hermitian(nh, 1.0), qsc::NonHermitianInput);
}

TEST_CASE("hermitian_eigen reconstructs the input") {
    qsc::RandomStream rng(11);
    const auto rho = qsc_test::random_density(4, rng);
    const auto eig = hermitian_eigen(rho);
    ComplexMatrix rebuilt(4, 4);
    for (std::size_t k = 0; k < 4; ++k) {
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c)
                rebuilt(r, c) += eig.values[k] * eig.vectors(r, k) * std::conj(eig.vectors(c, k));
    }
    CHECK(max_abs_diff(rebuilt, rho) < 1e-13);
    for (std::size_t k = 1; k < 4; ++k) CHECK(eig.values[k - 1] <= eig.values[k]);
}

TEST_CASE("partial_trace") {
    qsc::RandomStream rng(5);
    const auto a = qsc_test::random_density(2, rng);
    const auto b = qsc_test::random_density(2, rng);
    const auto ab = kron(a, b);
    CHECK(max_abs_diff(partial_trace(ab, Subsystem::first), a) < 1e-15);
    CHECK(max_abs_diff(partial_trace(ab, Subsystem::second), b) < 1e-15);

    ComplexMatrix bell(4, 4);
    for (std::size_t r : {0u, 3u})
        for (std::size_t c : {0u, 3u}) bell(r, c) = 0.5;
    const auto half = ComplexMatrix::identity(2) * 0.5;
    CHECK(max_abs_diff(partial_trace(bell, Subsystem::first), half) < 1e-15);
    CHECK(max_abs_diff(partial_trace(bell, Subsystem::second), half) < 1e-15);

    for (int trial = 0; trial < 20; ++trial) {
        const auto rho = qsc_test::random_density(4, rng);
        cplx direct = 0;
        for (std::size_t i = 0; i < 4; ++i) direct += rho(i, i);
        CHECK(std::abs(partial_trace(rho, Subsystem::first).trace() - direct) < 1e-14);
        CHECK(std::abs(partial_trace(rho, Subsystem::second).trace() - direct) < 1e-14);
        // system block sum: rho_s(i, j) = sum_k rho(2i + k, 2j + k)
        const auto s = partial_trace(rho, Subsystem::first);
        CHECK(std::abs(s(0, 1) - (rho(0, 2) + rho(1, 3))) < 1e-15);
    }

    CHECK_THROWS_AS(partial_trace(ComplexMatrix::identity(2), Subsystem::first), qsc::DimensionMismatch);
}

TEST_CASE("trace_distance") {
    qsc::RandomStream rng(9);
    const ComplexMatrix up{{1, 0}, {0, 0}};
    const ComplexMatrix down{{0, 0}, {0, 1}};
    CHECK(trace_distance(up, up) == doctest::Approx(0.0));
    CHECK(trace_distance(up, down) == doctest::Approx(1.0));
    for (std::size_t dim : {2u, 4u}) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto a = qsc_test::random_density(dim, rng);
            const auto b = qsc_test::random_density(dim, rng);
            CHECK(trace_distance(a, b) == doctest::Approx(trace_distance(b, a)).epsilon(1e-13));
            CHECK(trace_distance(a, b) <= 1.0 + 1e-12);
        }
    }
    // 2x2 closed form against the generic eigen route on a 4x4 embedding.
    const auto a = qsc_test::random_density(2, rng);
    const auto b = qsc_test::random_density(2, rng);
    const auto e = ComplexMatrix::diagonal({1, 0});
    CHECK(trace_distance(kron(a, e), kron(b, e)) == doctest::Approx(trace_distance(a, b)).epsilon(1e-12));
    CHECK_THROWS_AS(trace_distance(up, ComplexMatrix::identity(4)), qsc::DimensionMismatch);
}

TEST_CASE("defects and commutator") {
    CHECK(hermiticity_defect(PauliSet::sigma_y()) == 0.0);
    CHECK(hermiticity_defect(PauliSet::sigma_plus()) > 0.5);
    CHECK(unitarity_defect(PauliSet::sigma_x()) < 1e-15);
    const auto c = commutator(PauliSet::sigma_x(), PauliSet::sigma_y());
    CHECK(max_abs_diff(c, PauliSet::sigma_z() * cplx(0, 2)) < 1e-15);
    CHECK(frobenius_norm(ComplexMatrix::identity(4)) == doctest::Approx(2.0));
}

}
