#include "nhse/errors.hpp"
#include "nhse/linalg.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace nhse;
using oracles::set_match_distance;

namespace {

ComplexMatrix random_complex(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ComplexMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = Complex(dist(rng), dist(rng));
    return a;
}

} // namespace

TEST_CASE("eig reproduces a diagonal spectrum with axis eigenvectors") {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = Complex(1, 2);
    a(1, 1) = Complex(3, 0);

    const auto d = linalg::eig(a);
    ComplexVector expected(2);
    expected << Complex(1, 2), Complex(3, 0);
    CHECK(set_match_distance(d.eigenvalues, expected) < 1e-14);
    CHECK_FALSE(d.ill_conditioned);

    // Each eigenvector is an axis vector up to phase.
    for (int j = 0; j < 2; ++j) {
        const auto v = d.right_vectors.col(j).cwiseAbs();
        CHECK(v.maxCoeff() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(v.minCoeff() == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("eig flags a defective Jordan block instead of failing") {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 1) = 1.0;

    const auto d = linalg::eig(a);
    CHECK(std::abs(d.eigenvalues(0)) < 1e-12);
    CHECK(std::abs(d.eigenvalues(1)) < 1e-12);
    CHECK(d.ill_conditioned);
    CHECK(d.max_residual < 1e-10);
}

TEST_CASE("eig of an asymmetric-hopping tridiagonal matches the closed form") {
    // Subdiagonal 1, superdiagonal 4: eigenvalues 2 sqrt(4) cos(n pi / 4).
    ComplexMatrix a = ComplexMatrix::Zero(3, 3);
    a(1, 0) = a(2, 1) = 1.0;
    a(0, 1) = a(1, 2) = 4.0;

    const auto d = linalg::eig(a);
    ComplexVector expected(3);
    const double r8 = 2.0 * std::sqrt(2.0);
    expected << Complex(r8, 0), Complex(0, 0), Complex(-r8, 0);
    CHECK(set_match_distance(d.eigenvalues, expected) < 1e-12);
}

TEST_CASE("eig satisfies the trace and determinant invariants") {
    const ComplexMatrix a = random_complex(6, 11);
    const auto d = linalg::eig(a);

    const Complex tr = a.trace();
    CHECK(std::abs(d.eigenvalues.sum() - tr) < 1e-9 * a.norm());

    const Complex det = a.determinant();
    CHECK(std::abs(d.eigenvalues.prod() - det) < 1e-6 * std::abs(det));
}

TEST_CASE("eig computes matching left eigenvectors on request") {
    const ComplexMatrix a = random_complex(5, 17);
    const auto d = linalg::eig(a, true);
    REQUIRE(d.left_vectors.cols() == 5);
    for (int j = 0; j < 5; ++j) {
        const ComplexVector y = d.left_vectors.col(j);
        CHECK((y.adjoint() * a - d.eigenvalues(j) * y.adjoint()).norm() <
              1e-9 * a.norm());
    }
}

TEST_CASE("eig rejects non-square, empty, and non-finite input") {
    CHECK_THROWS_AS(linalg::eig(ComplexMatrix::Zero(2, 3)), InvalidSpecError);
    CHECK_THROWS_AS(linalg::eig(ComplexMatrix()), InvalidSpecError);
    ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
    bad(0, 0) = Complex(std::nan(""), 0.0);
    CHECK_THROWS_AS(linalg::eig(bad), InvalidSpecError);
}

TEST_CASE("expm of zero is the identity") {
    const ComplexMatrix r = linalg::expm(ComplexMatrix::Zero(4, 4));
    CHECK((r - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("expm of i pi times the identity is minus the identity") {
    ComplexMatrix a = Complex(0, kPi) * ComplexMatrix::Identity(3, 3);
    const ComplexMatrix r = linalg::expm(a);
    CHECK((r + ComplexMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("expm inverse and determinant identities hold") {
    const ComplexMatrix a = 2.0 * random_complex(4, 23);
    const ComplexMatrix fwd = linalg::expm(a);
    const ComplexMatrix bwd = linalg::expm(-a);
    CHECK((fwd * bwd - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-9);

    const Complex expected = std::exp(a.trace());
    CHECK(std::abs(fwd.determinant() - expected) < 1e-8 * std::abs(expected));
}

TEST_CASE("expm handles norms beyond the scaling threshold") {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = 50.0;
    a(1, 1) = Complex(0.0, 40.0);
    const ComplexMatrix r = linalg::expm(a);
    CHECK(std::abs(r(0, 0) - std::exp(50.0)) < 1e-8 * std::exp(50.0));
    CHECK(std::abs(r(1, 1) - std::exp(Complex(0.0, 40.0))) < 1e-10);
    CHECK(std::abs(r(0, 1)) == 0.0);
}

TEST_CASE("solve returns the exact inverse action on simple systems") {
    const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
    ComplexMatrix b(3, 1);
    b << Complex(1, 1), Complex(2, 0), Complex(0, -3);
    CHECK((linalg::solve(id, b) - b).cwiseAbs().maxCoeff() < 1e-15);

    const ComplexMatrix x = linalg::solve(2.0 * id, b);
    CHECK((x - 0.5 * b).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("solve round-trips a well conditioned random system") {
    const ComplexMatrix a =
        random_complex(8, 31) + 4.0 * ComplexMatrix::Identity(8, 8);
    const ComplexMatrix x_true = random_complex(8, 37);
    const ComplexMatrix x = linalg::solve(a, a * x_true);
    CHECK((x - x_true).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("solve rejects singular and mismatched systems") {
    ComplexMatrix singular = ComplexMatrix::Zero(2, 2);
    singular(0, 0) = 1.0;
    const ComplexMatrix eye2 = ComplexMatrix::Identity(2, 2);
    const ComplexMatrix eye3 = ComplexMatrix::Identity(3, 3);
    CHECK_THROWS_AS(linalg::solve(singular, eye2), SingularityError);
    CHECK_THROWS_AS(linalg::solve(eye2, eye3), InvalidSpecError);
}

TEST_CASE("real solve overload matches the complex one") {
    RealMatrix a(2, 2);
    a << 2, 1, 1, 3;
    RealMatrix b(2, 1);
    b << 1, 0;
    const RealMatrix x = linalg::solve(a, b);
    CHECK((a * x - b).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("kron lays out blocks in row-major block order") {
    ComplexMatrix a(2, 2), b(2, 2);
    a << 1, 2, 3, 4;
    b << Complex(0, 1), 0, 0, Complex(0, -1);
    const ComplexMatrix k = linalg::kron(a, b);
    REQUIRE(k.rows() == 4);
    CHECK(k(0, 0) == Complex(0, 1));
    CHECK(k(1, 1) == Complex(0, -1));
    CHECK(k(0, 2) == Complex(0, 2));
    CHECK(k(2, 0) == Complex(0, 3));
    CHECK(k(3, 3) == Complex(0, -4));
    CHECK(std::abs(k(0, 1)) == 0.0);
}

TEST_CASE("hermitian helpers classify and bound correctly") {
    ComplexMatrix h(2, 2);
    h << 2.0, Complex(1, 1), Complex(1, -1), 3.0;
    CHECK(linalg::is_hermitian(h));
    CHECK_FALSE(linalg::is_hermitian(h + ComplexMatrix::Constant(2, 2, Complex(0, 1))));

    // Eigenvalues of h are 1 and 4.
    CHECK(linalg::min_hermitian_eigenvalue(h) == doctest::Approx(1.0).epsilon(1e-12));
}
