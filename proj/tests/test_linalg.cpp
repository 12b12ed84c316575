#include <doctest.h>

#include <cmath>

#include "matls/bench/rng.hpp"
#include "matls/linalg.hpp"
#include "test_util.hpp"

using namespace matls;
using bench::Rng;

TEST_CASE("vec stacks columns") {
    const Mat x{{1, 2}, {3, 4}};
    const Mat v = vec(x);
    REQUIRE(v.rows() == 4);
    REQUIRE(v.cols() == 1);
    CHECK(v(0, 0) == 1.0);
    CHECK(v(1, 0) == 3.0);
    CHECK(v(2, 0) == 2.0);
    CHECK(v(3, 0) == 4.0);
}

TEST_CASE("vec of a column vector is the identity") {
    Rng rng = Rng::stream(11, 0, "vec-column");
    const Mat x = rng.gaussian_mat(5, 1);
    CHECK(test::max_abs_diff(vec(x), x) == 0.0);
}

TEST_CASE("unvec inverts vec") {
    const Mat v(4, 1, {1, 3, 2, 4});
    const Mat x = unvec(v, 2, 2);
    CHECK(x(0, 0) == 1.0);
    CHECK(x(0, 1) == 2.0);
    CHECK(x(1, 0) == 3.0);
    CHECK(x(1, 1) == 4.0);

    // Row-shaped target is just a reshape.
    const Mat row = unvec(Mat(3, 1, {7, 8, 9}), 1, 3);
    CHECK(row(0, 1) == 8.0);

    CHECK_THROWS_AS(unvec(v, 3, 2), std::invalid_argument);
}

TEST_CASE("vec/unvec round trip is bit-exact up to 50x50") {
    Rng rng = Rng::stream(12, 0, "vec-roundtrip");
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t rows = 1 + rng.uniform_index(50);
        const std::size_t cols = 1 + rng.uniform_index(50);
        const Mat x = rng.gaussian_mat(rows, cols);
        CHECK(test::max_abs_diff(unvec(vec(x), rows, cols), x) == 0.0);
        const Mat v = rng.gaussian_mat(rows * cols, 1);
        CHECK(test::max_abs_diff(vec(unvec(v, rows, cols)), v) == 0.0);
    }
}

TEST_CASE("kron with identity gives a block diagonal") {
    const Mat b{{1, 2}, {3, 4}};
    const Mat k = kron(Mat::identity(2), b);
    REQUIRE(k.rows() == 4);
    REQUIRE(k.cols() == 4);
    CHECK(k(0, 0) == 1.0);
    CHECK(k(1, 1) == 4.0);
    CHECK(k(2, 2) == 1.0);
    CHECK(k(3, 2) == 3.0);
    CHECK(k(0, 2) == 0.0);
    CHECK(k(3, 0) == 0.0);

    const Mat scaled = kron(Mat{{2}}, b);
    CHECK(test::max_abs_diff(scaled, 2.0 * b) == 0.0);
}

TEST_CASE("kron identity: vec(phi*theta) == (I (x) phi) vec(theta)") {
    Rng rng = Rng::stream(13, 0, "kron-vec");
    const Mat phi = rng.gaussian_mat(2, 3);
    const Mat theta = rng.gaussian_mat(3, 2);
    const Mat lhs = vec(phi * theta);
    const Mat rhs = kron(Mat::identity(2), phi) * vec(theta);
    CHECK(test::max_abs_diff(lhs, rhs) <= 1e-14);
}

TEST_CASE("spd_solve basics") {
    const Mat b(2, 1, {2, 8});
    CHECK(test::max_abs_diff(spd_solve(SpdMat::identity(2), b), b) == 0.0);

    const SpdMat diag(Mat{{2, 0}, {0, 4}});
    const Mat x = spd_solve(diag, b);
    CHECK(x(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(x(1, 0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("spd_solve matches an explicit dense inverse") {
    Rng rng = Rng::stream(14, 0, "spd-oracle");
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = 2 + rng.uniform_index(7);
        const Mat m = rng.gaussian_mat(n, n);
        const SpdMat a = symmetrize(mul_transpose_lhs(m, m) + Mat::identity(n));
        const Mat b = rng.gaussian_mat(n, 3);
        const Mat expected = test::gauss_jordan_inverse(a.matrix()) * b;
        CHECK(relative_error(spd_solve(a, b), expected) <= 1e-12);
    }
}

TEST_CASE("spd_solve residual stays tiny and recovery holds") {
    Rng rng = Rng::stream(15, 0, "spd-recovery");
    // Moderate-conditioned dense instances: forward recovery within 1e-10.
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = 3 + rng.uniform_index(6);
        const Mat m = rng.gaussian_mat(n, n);
        const SpdMat a = symmetrize((1.0 / static_cast<double>(n)) * mul_transpose_lhs(m, m) +
                                    Mat::identity(n));
        const Mat x = rng.gaussian_mat(n, 2);
        const Mat b = a.matrix() * x;
        const Mat solved = spd_solve(a, b);
        CHECK(relative_error(solved, x) <= 1e-10);
        CHECK(frobenius_norm(a.matrix() * solved - b) <= 1e-10 * frobenius_norm(b));
    }
    // Condition number 1e8 via a diagonal spread.
    Mat d(6, 6);
    for (std::size_t i = 0; i < 6; ++i) {
        d(i, i) = std::pow(10.0, static_cast<double>(i) * 8.0 / 5.0);
    }
    const SpdMat spread(d);
    const Mat x = rng.gaussian_mat(6, 1);
    CHECK(relative_error(spd_solve(spread, spread.matrix() * x), x) <= 1e-10);
}

TEST_CASE("spd_solve names the offending pivot") {
    const SpdMat indefinite(Mat{{1, 2}, {2, 1}});
    try {
        spd_solve(indefinite, Mat(2, 1, {1, 1}));
        FAIL("expected NotPositiveDefiniteError");
    } catch (const NotPositiveDefiniteError& e) {
        CHECK(e.pivot_index() == 1);
        CHECK(std::string(e.what()).find("pivot 1") != std::string::npos);
    }
}

TEST_CASE("woodbury_downdate leaves p unchanged for a zero regressor") {
    Rng rng = Rng::stream(16, 0, "woodbury-zero");
    const Mat m = rng.gaussian_mat(4, 4);
    const SpdMat p = symmetrize(mul_transpose_lhs(m, m) + Mat::identity(4));
    const SpdMat out = woodbury_downdate(p, Mat(2, 4), SpdMat::identity(2));
    CHECK(test::max_abs_diff(out.matrix(), p.matrix()) <= 1e-15);
}

TEST_CASE("woodbury_downdate identity case is I/2") {
    const SpdMat out = woodbury_downdate(SpdMat::identity(3), Mat::identity(3), SpdMat::identity(3));
    CHECK(test::max_abs_diff(out.matrix(), 0.5 * Mat::identity(3)) <= 1e-15);
}

TEST_CASE("woodbury_downdate matches the information-form inverse") {
    Rng rng = Rng::stream(17, 0, "woodbury-oracle");
    for (int rep = 0; rep < 12; ++rep) {
        const std::size_t n = 2 + rng.uniform_index(5);
        const std::size_t p_rows = 1 + rng.uniform_index(3);
        const Mat mp = rng.gaussian_mat(n, n);
        const SpdMat p = symmetrize((1.0 / n) * mul_transpose_lhs(mp, mp) + Mat::identity(n));
        const Mat mg = rng.gaussian_mat(p_rows, p_rows);
        const SpdMat gamma =
            symmetrize((1.0 / p_rows) * mul_transpose_lhs(mg, mg) + Mat::identity(p_rows));
        const Mat phi = rng.gaussian_mat(p_rows, n);

        const SpdMat updated = woodbury_downdate(p, phi, gamma);

        const Mat info = test::gauss_jordan_inverse(p.matrix()) +
                         mul_transpose_lhs(phi, gamma.matrix() * phi);
        const Mat expected = test::gauss_jordan_inverse(info);
        CHECK(relative_error(updated.matrix(), expected) <= 1e-9);
        CHECK(is_positive_definite(updated));
    }
}

TEST_CASE("vec quadratic form equals the weighted trace") {
    // vec(x)^T (I_m (x) A) vec(x) == tr(x^T A x)
    Rng rng = Rng::stream(18, 0, "vec-trace");
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = 1 + rng.uniform_index(6);
        const std::size_t m = 1 + rng.uniform_index(4);
        const Mat x = rng.gaussian_mat(n, m);
        const Mat a = rng.gaussian_mat(n, n);
        const Mat v = vec(x);
        const Mat big = kron(Mat::identity(m), a);
        const Mat tmp = big * v;
        double lhs = 0.0;
        for (std::size_t i = 0; i < v.rows(); ++i) {
            lhs += v(i, 0) * tmp(i, 0);
        }
        const double rhs = trace(mul_transpose_lhs(x, a * x));
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("symmetric eigenvalues from cyclic Jacobi") {
    const std::vector<double> eigs = sym_eigenvalues(Mat{{2, 1}, {1, 2}});
    CHECK(eigs[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eigs[1] == doctest::Approx(3.0).epsilon(1e-12));

    Rng rng = Rng::stream(19, 0, "jacobi");
    const Mat m = rng.gaussian_mat(6, 6);
    const SpdMat a = symmetrize(mul_transpose_lhs(m, m) + Mat::identity(6));
    const std::vector<double> spd_eigs = sym_eigenvalues(a.matrix());
    double tr = 0.0;
    for (double e : spd_eigs) {
        CHECK(e > 0.0);
        tr += e;
    }
    CHECK(tr == doctest::Approx(trace(a.matrix())).epsilon(1e-10));
    CHECK(min_eigenvalue(a.matrix()) == doctest::Approx(spd_eigs.front()));
}

TEST_CASE("SpdMat rejects asymmetric input, Mat rejects non-finite input") {
    CHECK_THROWS_AS(SpdMat(Mat{{1, 2}, {0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Mat(1, 1, {std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(Mat(0, 0), std::invalid_argument);
}

TEST_CASE("Cholesky pivot floor is relative to trace/dim") {
    // Floor here is ~1e-13 * 1/2 = 5e-14: a 2e-13 pivot factors, 2.4e-14
    // counts as non-positive.
    CHECK(is_positive_definite(SpdMat(Mat{{1.0, 0.0}, {0.0, 2e-13}})));
    CHECK_FALSE(is_positive_definite(SpdMat(Mat{{1.0, 0.0}, {0.0, 2.4e-14}})));
}

TEST_CASE("kron dimensions multiply") {
    Rng rng = Rng::stream(20, 0, "kron-dims");
    const Mat a = rng.gaussian_mat(2, 5);
    const Mat b = rng.gaussian_mat(3, 4);
    const Mat k = kron(a, b);
    CHECK(k.rows() == 6);
    CHECK(k.cols() == 20);
    // Mixed-product property on a compatible pair.
    const Mat c = rng.gaussian_mat(5, 2);
    const Mat d = rng.gaussian_mat(4, 3);
    CHECK(relative_error(kron(a, b) * kron(c, d), kron(a * c, b * d)) <= 1e-13);
}
