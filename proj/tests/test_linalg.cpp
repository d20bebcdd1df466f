#include <doctest.h>

#include <cmath>
#include <complex>

#include "mmpr/linalg.hpp"
#include "test_oracles.hpp"

using namespace mmpr;
using mmpr::testing::TestDraws;
using mmpr::testing::char_poly_residual;
using mmpr::testing::taylor_exp;

TEST_CASE("vector and matrix construction rejects non-finite entries") {
    CHECK_THROWS_AS(Vector{std::nan("")}, DomainError);
    CHECK_THROWS_AS(Matrix(1, 1, {INFINITY}), DomainError);
    CHECK_THROWS_AS(Matrix(2, 2, {1.0, 2.0, 3.0}), DimensionError);
}

TEST_CASE("mat_exp of the zero matrix is the identity for any time") {
    const Matrix z(2, 2);
    CHECK(max_abs_diff(mat_exp(z, 7.0), Matrix::identity(2)) == 0.0);
}

TEST_CASE("mat_exp of a diagonal matrix exponentiates the diagonal") {
    const Matrix d(2, 2, {-1.0, 0.0, 0.0, -2.0});
    const Matrix e = mat_exp(d, 1.0);
    CHECK(e(0, 0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(e(1, 1) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(std::abs(e(0, 1)) < 1e-16);
    CHECK(std::abs(e(1, 0)) < 1e-16);
}

TEST_CASE("mat_exp matches an independent series oracle on B_Sigma") {
    // Covariance matrix at the test parameters, eps = 0.1.
    const Matrix b_sigma(3, 3,
                         {-2.0, -2.0, 0.0,
                          1.0, -11.0, -1.0,
                          0.0, 2.0, -20.0});
    const Matrix e = mat_exp(b_sigma, 0.5);
    const Matrix oracle = taylor_exp(b_sigma, 0.5);
    CHECK(max_abs_diff(e, oracle) <= 1e-12 * oracle.inf_norm());
    // Spot values frozen from the series oracle.
    CHECK(e(0, 0) == doctest::Approx(3.3710849591003067e-01).epsilon(1e-12));
    CHECK(e(1, 1) == doctest::Approx(-4.2406961717568010e-03).epsilon(1e-11));
    CHECK(e(2, 0) == doctest::Approx(4.1637338051104316e-03).epsilon(1e-11));
}

TEST_CASE("mat_exp rejects bad input") {
    CHECK_THROWS_AS(mat_exp(Matrix(2, 3), 1.0), DimensionError);
    CHECK_THROWS_AS(mat_exp(Matrix::identity(2), INFINITY), DomainError);
}

TEST_CASE("mat_exp semigroup property on random stable matrices") {
    TestDraws draws(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix m = draws.stable_matrix(3);
        const double s = draws.uniform(0.0, 2.0);
        const double t = draws.uniform(0.0, 2.0);
        const Matrix lhs = mat_exp(m, s) * mat_exp(m, t);
        const Matrix rhs = mat_exp(m, s + t);
        CHECK(max_abs_diff(lhs, rhs) <= 1e-10);
    }
}

TEST_CASE("solve with identity and diagonal matrices") {
    const Vector v{3.0, -4.0};
    CHECK(solve(Matrix::identity(2), v) == v);
    const Vector w = solve(Matrix(2, 2, {2.0, 0.0, 0.0, 4.0}), Vector{2.0, 4.0});
    CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(w[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("solve cross-checked against the closed-form 2x2 inverse") {
    // A_Sigma at test parameters, eps = 0.1, against q_Sigma.
    const Matrix a(2, 2, {1.1, 0.1, -0.2, 2.0});
    const Vector q{0.1, 0.0};
    const Vector x = solve(a, q);
    // Adjugate formula: A^{-1} = [[d,-b],[-c,a]] / det.
    const double det = 1.1 * 2.0 - 0.1 * (-0.2);
    const Vector expected{(2.0 * q[0] - 0.1 * q[1]) / det,
                          (0.2 * q[0] + 1.1 * q[1]) / det};
    CHECK(max_abs_diff(x, expected) <= 1e-15);
    CHECK(x[0] == doctest::Approx(0.09009009009009009).epsilon(1e-13));
}

TEST_CASE("solve flags singular matrices with the pivot magnitude") {
    const Matrix singular(2, 2, {1.0, 2.0, 2.0, 4.0});
    try {
        solve(singular, Vector{1.0, 1.0});
        FAIL("expected SingularityError");
    } catch (const SingularityError& err) {
        CHECK(err.pivot() >= 0.0);
        CHECK(err.pivot() < 1e-13 * singular.inf_norm());
    }
}

TEST_CASE("solve round-trips through multiplication") {
    TestDraws draws(55);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix m = draws.stable_matrix(3);
        const Vector v = draws.vector(3, -5.0, 5.0);
        const Vector w = solve(m, v);
        CHECK(max_abs_diff(m * w, v) <= 1e-11 * std::max(1.0, v.max_abs()));
    }
}

TEST_CASE("eigenvalues of diagonal and rotation matrices") {
    const auto diag = eigenvalues(Matrix(2, 2, {1.0, 0.0, 0.0, 2.0}));
    CHECK(diag[0].real() == doctest::Approx(2.0));
    CHECK(diag[1].real() == doctest::Approx(1.0));
    CHECK(diag[0].imag() == 0.0);

    const auto rot = eigenvalues(Matrix(2, 2, {0.0, -1.0, 1.0, 0.0}));
    CHECK(rot[0].real() == doctest::Approx(0.0));
    CHECK(rot[0].imag() == doctest::Approx(1.0));
    CHECK(rot[1].imag() == doctest::Approx(-1.0));
}

TEST_CASE("eigenvalues of A_Sigma match the quadratic-formula oracle") {
    const Matrix a(2, 2, {1.1, 0.1, -0.2, 2.0});
    const auto eig = eigenvalues(a);
    // trace/determinant quadratic: (3.1 +- sqrt(3.1^2 - 4*2.22)) / 2.
    const double disc = std::sqrt(3.1 * 3.1 - 4.0 * 2.22);
    CHECK(eig[0].real() == doctest::Approx((3.1 + disc) / 2.0).epsilon(1e-13));
    CHECK(eig[1].real() == doctest::Approx((3.1 - disc) / 2.0).epsilon(1e-13));
    CHECK(eig[0].real() == doctest::Approx(1.9772001872658767).epsilon(1e-12));
    CHECK(eig[1].real() == doctest::Approx(1.1227998127341234).epsilon(1e-12));
    CHECK(eig[0].imag() == 0.0);
}

TEST_CASE("eigenvalues reject unsupported sizes") {
    CHECK_THROWS_AS(eigenvalues(Matrix::identity(4)), UnsupportedDimensionError);
    CHECK_THROWS_AS(eigenvalues(Matrix(2, 3)), DimensionError);
}

TEST_CASE("eigenvalue residuals, trace and determinant identities") {
    TestDraws draws(99);
    for (int trial = 0; trial < 25; ++trial) {
        const Matrix m = draws.matrix(3, 3, -2.0, 2.0);
        const auto eig = eigenvalues(m);
        const double scale = std::pow(std::max(m.inf_norm(), 1.0), 3.0);
        std::complex<double> sum = 0.0;
        std::complex<double> prod = 1.0;
        for (const auto& lambda : eig) {
            CHECK(std::abs(char_poly_residual(m, lambda)) <= 1e-9 * scale);
            sum += lambda;
            prod *= lambda;
        }
        CHECK(std::abs(sum - m.trace()) <=
              1e-9 * std::max(1.0, std::abs(m.trace())));
        CHECK(std::abs(prod - determinant(m)) <=
              1e-9 * std::max(1.0, std::abs(determinant(m))));
    }
}
