#include <doctest.h>

#include <algorithm>

#include "ncdual/errors.hpp"
#include "ncdual/relmeasure.hpp"
#include "ncdual/states.hpp"
#include "support.hpp"

using namespace ncdual;

namespace {

FinEquivRel random_relation(Rng& rng, int max_points)
{
    std::uniform_int_distribution<int> size(1, max_points);
    const int n = size(rng);
    std::uniform_int_distribution<int> lab(0, n - 1);
    std::vector<int> cls(n);
    for (auto& c : cls)
        c = lab(rng);
    std::vector<std::string> pts;
    for (int k = 0; k < n; ++k)
        pts.push_back("p" + std::to_string(k));
    return FinEquivRel(pts, cls);
}

// Convolution written out from its definition, as an independent oracle.
Matrix convolve_oracle(const RelMeasure& m1, const RelMeasure& m2)
{
    const int n = m1.relation.size();
    Matrix w = Matrix::Zero(n, n);
    for (int x = 0; x < n; ++x)
        for (int z = 0; z < n; ++z)
            for (int y = 0; y < n; ++y)
                if (m1.relation.contains(x, y) && m1.relation.contains(y, z))
                    w(x, z) += m2(x, y) * m1(y, z);
    return w;
}

} // namespace

TEST_SUITE("relmeasure") {

TEST_CASE("hat of the identity of M2 is the diagonal unit")
{
    const Tolerance tol;
    const auto a = generate(2, std::vector<Matrix>{test::mat(2, {0, 1, 0, 0})}, tol, 1);
    const RelMeasure m = hat_measure(identity(2), a, tol);
    CHECK((m.weights - identity(2)).norm() < 1e-12);
}

TEST_CASE("hat on C^2 is the Gelfand transform")
{
    const Tolerance tol;
    const auto a = generate(2, std::vector<Matrix>{test::diag({1, 2})}, tol, 1);
    const RelMeasure m = hat_measure(test::diag({Complex(3, 1), -4}), a, tol);
    CHECK(std::abs(m(0, 1)) < 1e-12);
    CHECK(std::abs(m(1, 0)) < 1e-12);
    std::vector<double> re{m(0, 0).real(), m(1, 1).real()};
    std::sort(re.begin(), re.end());
    CHECK(re[0] == doctest::Approx(-4.0));
    CHECK(re[1] == doctest::Approx(3.0));
}

TEST_CASE("hat of the matrix unit e12 sits on one off-diagonal pair")
{
    const Tolerance tol;
    const Matrix e12 = test::mat(2, {0, 1, 0, 0});
    const auto a = generate(2, std::vector<Matrix>{e12}, tol, 1);
    const RelMeasure m = hat_measure(e12, a, tol);
    // Weight (k, j) is the block entry (j, k) in the block's skeleton basis.
    const Matrix& v = a.blocks[0].isometry;
    const Matrix b = v.adjoint() * e12 * v;
    CHECK((m.weights - b.transpose()).norm() < 1e-12);
    if ((v - identity(2)).norm() < 1e-12) {
        CHECK(std::abs(m(1, 0) - 1.0) < 1e-12);
        CHECK(std::abs(m(0, 1)) < 1e-12);
    }
}

TEST_CASE("delta is the unit and hat is multiplicative on M2")
{
    const Tolerance tol;
    Rng rng(41);
    const auto alg = generate(2, std::vector<Matrix>{test::mat(2, {0, 1, 0, 0})}, tol, 1);
    for (int t = 0; t < 10; ++t) {
        const Matrix a = random_complex(2, 2, rng), b = random_complex(2, 2, rng);
        const RelMeasure ha = hat_measure(a, alg, tol), hb = hat_measure(b, alg, tol);
        const RelMeasure d = delta_measure(ha.relation);
        CHECK((convolve(d, ha).weights - ha.weights).norm() < 1e-12);
        CHECK((convolve(ha, d).weights - ha.weights).norm() < 1e-12);
        CHECK((convolve(ha, hb).weights - hat_measure(a * b, alg, tol).weights).norm() < 1e-10);
        CHECK((adjoint(ha).weights - hat_measure(a.adjoint(), alg, tol).weights).norm() < 1e-10);
    }
}

TEST_CASE("diagonal measures convolve pointwise")
{
    const FinEquivRel r = FinEquivRel::discrete(4);
    RelMeasure a = zero_measure(r), b = zero_measure(r);
    for (int k = 0; k < 4; ++k) {
        a.weights(k, k) = Complex(k + 1, 1);
        b.weights(k, k) = Complex(2, -k);
    }
    const RelMeasure c = convolve(a, b);
    for (int k = 0; k < 4; ++k)
        CHECK(std::abs(c(k, k) - a(k, k) * b(k, k)) < 1e-14);
}

TEST_CASE("convolution is associative with unit delta on random relations")
{
    Rng rng(42);
    for (int t = 0; t < 40; ++t) {
        const FinEquivRel r = random_relation(rng, 8);
        const RelMeasure a = random_measure(r, rng), b = random_measure(r, rng), c = random_measure(r, rng);
        CHECK((convolve(a, b).weights - convolve_oracle(a, b)).norm() < 1e-12);
        CHECK((convolve(convolve(a, b), c).weights - convolve(a, convolve(b, c)).weights).norm() < 1e-10);
        CHECK((convolve(delta_measure(r), a).weights - a.weights).norm() < 1e-14);
        CHECK_NOTHROW(convolve(a, b).validate());
        CHECK((measure_matrix(convolve(a, b)) - measure_matrix(a) * measure_matrix(b)).norm() < 1e-10);
    }
}

TEST_CASE("hat is isometric and commutative algebras give diagonal measures")
{
    const Tolerance tol;
    Rng rng(43);
    const Matrix u = random_unitary(4, rng);
    const auto comm = generate(4, std::vector<Matrix>{u * test::diag({1, 2, 3, 4}) * u.adjoint()}, tol, 2);
    const auto full = generate(3, std::vector<Matrix>{random_complex(3, 3, rng)}, tol, 2);
    for (int t = 0; t < 10; ++t) {
        const Matrix x = comm.element(random_complex(comm.dimension(), 1, rng).col(0));
        const RelMeasure m = hat_measure(x, comm, tol);
        CHECK((m.weights - Matrix(m.weights.diagonal().asDiagonal())).norm() < 1e-12);
        CHECK(std::abs(block_norm(m) - op_norm(x)) < 1e-10);
        const Matrix y = random_complex(3, 3, rng);
        CHECK(std::abs(block_norm(hat_measure(y, full, tol)) - op_norm(y)) < 1e-10);
    }
}

TEST_CASE("error paths")
{
    const Tolerance tol;
    const auto diag2 = generate(2, std::vector<Matrix>{test::diag({1, 2})}, tol, 1);
    CHECK_THROWS_AS(hat_measure(test::mat(2, {0, 1, 0, 0}), diag2, tol), NotInAlgebra);
    CHECK_THROWS_AS(hat_measure(identity(3), diag2, tol), DimensionMismatch);
    CHECK_THROWS_AS(convolve(delta_measure(FinEquivRel::discrete(2)), delta_measure(FinEquivRel::discrete(3))),
                    RelationMismatch);
    RelMeasure bad = zero_measure(FinEquivRel::discrete(2));
    bad.weights(0, 1) = 1.0;
    CHECK_THROWS_AS(bad.validate(), InputError);
    CHECK_THROWS_AS(point_mass(FinEquivRel::discrete(2), 0, 1), InputError);
}

TEST_CASE("algebra round-trip examples")
{
    const Tolerance tol;
    const auto c2 = generate(2, std::vector<Matrix>{test::diag({1, 2})}, tol, 1);
    auto rep = duality_roundtrip_algebra(c2, tol, 5);
    CHECK(rep.passed(1e-10));
    CHECK(rep.block_dims == std::vector<int>{1, 1});

    const auto m2 = generate(2, std::vector<Matrix>{test::mat(2, {0, 1, 0, 0})}, tol, 1);
    rep = duality_roundtrip_algebra(m2, tol, 5);
    CHECK(rep.passed(1e-10));
    CHECK(rep.algebra_dimension == 4);
    CHECK(rep.relation_pairs == 4);

    const Matrix g = test::block_diag(Matrix::Constant(1, 1, 3.0), test::mat(2, {0, 1, 0, 0}));
    const auto cm2 = generate(3, std::vector<Matrix>{g}, tol, 1);
    rep = duality_roundtrip_algebra(cm2, tol, 5);
    CHECK(rep.passed(1e-10));
    std::vector<int> dims = rep.block_dims;
    std::sort(dims.begin(), dims.end());
    CHECK(dims == std::vector<int>{1, 2});
}

TEST_CASE("relation round-trip examples")
{
    const Tolerance tol;
    auto rep = duality_roundtrip_relation(FinEquivRel::discrete(3), tol, 1);
    CHECK(rep.recovered_sizes == std::vector<int>{1, 1, 1});
    CHECK(rep.matched);
    rep = duality_roundtrip_relation(FinEquivRel::with_class_sizes({2}), tol, 1);
    CHECK(rep.recovered_sizes == std::vector<int>{2});
    CHECK(rep.algebra_dimension == 4);
    rep = duality_roundtrip_relation(FinEquivRel::with_class_sizes({2, 3}), tol, 1);
    CHECK(rep.recovered_sizes == std::vector<int>{2, 3});
    CHECK(rep.algebra_dimension == 13);
    CHECK(rep.matched);
}

}
