#include <doctest.h>

#include "ncdual/errors.hpp"
#include "ncdual/numeric.hpp"
#include "support.hpp"

using namespace ncdual;

TEST_SUITE("numeric") {

TEST_CASE("eig clusters identity, diagonal and nilpotent input")
{
    const Tolerance tol;
    auto e = eig(identity(3), tol);
    REQUIRE(e.size() == 1);
    CHECK(std::abs(e[0].value - 1.0) < 1e-12);
    CHECK(e[0].multiplicity == 3);

    e = eig(test::diag({1, 2, 2}), tol);
    REQUIRE(e.size() == 2);
    CHECK(std::abs(e[0].value - 1.0) < 1e-12);
    CHECK(e[0].multiplicity == 1);
    CHECK(std::abs(e[1].value - 2.0) < 1e-12);
    CHECK(e[1].multiplicity == 2);

    e = eig(test::mat(2, {0, 1, 0, 0}), tol);
    REQUIRE(e.size() == 1);
    CHECK(std::abs(e[0].value) < 1e-12);
    CHECK(e[0].multiplicity == 2);
}

TEST_CASE("rank of zero, identity and the all-ones 2x2")
{
    const Tolerance tol;
    CHECK(rank(Matrix::Zero(3, 3), tol) == 0);
    for (int n = 1; n <= 5; ++n)
        CHECK(rank(identity(n), tol) == n);
    // Closed-form 2x2 singular values: sqrt of eigenvalues of a*a = [[2,2],[2,2]], i.e. 2 and 0.
    const Matrix ones = Matrix::Constant(2, 2, 1.0);
    const auto sv = singular_values(ones);
    CHECK(sv(0) == doctest::Approx(2.0));
    CHECK(sv(1) == doctest::Approx(0.0));
    CHECK(rank(ones, tol) == 1);
}

TEST_CASE("eig multiplicities sum to the dimension and clusters are separated")
{
    Rng rng(11);
    const Tolerance tol;
    for (int t = 0; t < 50; ++t) {
        const int n = 1 + t % 7;
        const Matrix m = random_complex(n, n, rng);
        const auto e = eig(m, tol);
        int total = 0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            total += e[i].multiplicity;
            for (std::size_t j = i + 1; j < e.size(); ++j)
                CHECK(std::abs(e[i].value - e[j].value) > tol.eps_eig);
            CHECK(rank(m - e[i].value * identity(n), tol) < n);
        }
        CHECK(total == n);
    }
}

TEST_CASE("rank plus nullity equals the column count")
{
    Rng rng(12);
    const Tolerance tol;
    for (int t = 0; t < 60; ++t) {
        const int rows = 1 + t % 6, cols = 1 + (t / 6) % 6, r = t % (std::min(rows, cols) + 1);
        const Matrix m = random_complex(rows, r, rng) * random_complex(r, cols, rng);
        const Matrix k = null_space(m, tol);
        CHECK(rank(m, tol) == r);
        CHECK(rank(m, tol) + k.cols() == cols);
        if (k.cols() > 0) {
            CHECK((m * k).norm() < 1e-10 * std::max(1.0, m.norm()));
            CHECK((k.adjoint() * k - identity(static_cast<int>(k.cols()))).norm() < 1e-10);
        }
    }
}

TEST_CASE("rank stays exact on highly degenerate spectra")
{
    // Stacked copies of one projector: every nonzero singular value is equal.
    // Divide-and-conquer SVDs have been seen to misplace the zero here.
    const Tolerance tol;
    const int n = 16, copies = 34;
    Rng rng(5);
    const Matrix u = random_unitary(n, rng);
    const Matrix p = identity(n) - u.col(0) * u.col(0).adjoint();
    Matrix full(copies * n, n), deficient(copies * n, n);
    for (int b = 0; b < copies; ++b) {
        full.middleRows(b * n, n) = random_unitary(n, rng);
        deficient.middleRows(b * n, n) = p;
    }
    CHECK(rank(full, tol) == n);
    CHECK(rank(deficient, tol) == n - 1);
    const Matrix k = null_space(deficient, tol);
    REQUIRE(k.cols() == 1);
    CHECK(std::abs(std::abs(k.col(0).dot(u.col(0))) - 1.0) < 1e-10);
}

TEST_CASE("adjoint is an involution")
{
    Rng rng(13);
    for (int n = 1; n <= 6; ++n) {
        const Matrix m = random_complex(n, n, rng);
        CHECK(adjoint(adjoint(m)) == m);
        CHECK(adjoint(m) == m.adjoint());
    }
}

TEST_CASE("projector, meet and join of coordinate subspaces")
{
    const Tolerance tol;
    const Matrix p = test::diag({1, 1, 0}), q = test::diag({0, 1, 1});
    CHECK((projection_meet(p, q, tol) - test::diag({0, 1, 0})).norm() < 1e-12);
    CHECK((projection_join(p, q, tol) - identity(3)).norm() < 1e-12);
    Matrix v(3, 1);
    v << 1.0, 1.0, 0.0;
    const Matrix pv = projector(v, tol);
    CHECK((pv - v * v.adjoint() / 2.0).norm() < 1e-12);
    CHECK((projection_meet(pv, test::diag({1, 0, 0}), tol)).norm() < 1e-12);
}

TEST_CASE("single linkage chains nearby values")
{
    const std::vector<Complex> v{0.0, 0.05, 0.1, 1.0, 1.04};
    CHECK(single_linkage(v, 0.06) == std::vector<int>{0, 0, 0, 1, 1});
    CHECK(single_linkage(v, 0.01) == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("random unitary and hermitian helpers")
{
    Rng rng(14);
    for (int n = 1; n <= 6; ++n) {
        const Matrix u = random_unitary(n, rng), h = random_hermitian(n, rng);
        CHECK((u.adjoint() * u - identity(n)).norm() < 1e-12);
        CHECK((h - h.adjoint()).norm() < 1e-12);
        CHECK(condition_number(u) == doctest::Approx(1.0));
    }
    CHECK(std::isinf(condition_number(Matrix::Zero(2, 2))));
}

TEST_CASE("tolerance validation and square-finite guard")
{
    Tolerance t;
    CHECK_NOTHROW(t.validate());
    t.eps_rank = 1e-6;
    CHECK_THROWS_AS(t.validate(), InputError);
    t = Tolerance{};
    t.eps_eig = 0.0;
    CHECK_THROWS_AS(t.validate(), InputError);
    Matrix bad = identity(2);
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(require_square_finite(bad, "m"), InputError);
    CHECK_THROWS_AS(require_square_finite(Matrix::Zero(2, 3), "m"), InputError);
    CHECK_FALSE(is_finite(bad));
}

TEST_CASE("norms and inner products")
{
    const Matrix a = test::mat(2, {3, 0, 0, 4});
    CHECK(op_norm(a) == doctest::Approx(4.0));
    CHECK(hs_norm(a) == doctest::Approx(5.0));
    CHECK(std::abs(hs_inner(a, identity(2)) - 7.0) < 1e-12);
    CHECK((vec(test::mat(2, {1, 2, 3, 4})) - (Vector(4) << 1.0, 3.0, 2.0, 4.0).finished()).norm() == 0.0);
}

}
