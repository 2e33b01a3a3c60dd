#include <doctest.h>

#include <algorithm>

#include "ncdual/acceptance.hpp"
#include "ncdual/algebra.hpp"
#include "ncdual/errors.hpp"
#include "support.hpp"

using namespace ncdual;

namespace {

// Word-closure oracle: span of all products of {1, g, g*} until stable.
int closure_dimension(int n, const std::vector<Matrix>& gens)
{
    const Tolerance tol;
    std::vector<Matrix> span{identity(n)};
    for (const auto& g : gens) {
        span.push_back(g);
        span.push_back(g.adjoint());
    }
    auto stacked_rank = [&](const std::vector<Matrix>& s) {
        Matrix m(n * n, static_cast<Eigen::Index>(s.size()));
        for (std::size_t i = 0; i < s.size(); ++i)
            m.col(static_cast<Eigen::Index>(i)) = vec(s[i]);
        return rank(m, tol);
    };
    int r = stacked_rank(span);
    for (;;) {
        const std::size_t k = span.size();
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                span.push_back(span[i] * span[j]);
        const int r2 = stacked_rank(span);
        // Keep a spanning subset small: orthonormalize.
        Matrix m(n * n, static_cast<Eigen::Index>(span.size()));
        for (std::size_t i = 0; i < span.size(); ++i)
            m.col(static_cast<Eigen::Index>(i)) = vec(span[i]);
        const Matrix q = range_basis(m, tol);
        span.clear();
        for (Eigen::Index c = 0; c < q.cols(); ++c)
            span.push_back(Eigen::Map<const Matrix>(q.col(c).data(), n, n));
        if (r2 == r)
            return r;
        r = r2;
    }
}

// Brute-force center: coefficient vectors c with sum_i c_i [B_i, B_j] = 0 for all j.
int center_oracle(const FiniteCStar& a)
{
    const int d = a.dimension(), n2 = a.ambient_dim * a.ambient_dim;
    Matrix sys(static_cast<Eigen::Index>(d) * n2, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            sys.block(static_cast<Eigen::Index>(j) * n2, i, n2, 1) =
                vec(a.basis[i] * a.basis[j] - a.basis[j] * a.basis[i]);
    return static_cast<int>(null_space(sys, Tolerance{}).cols());
}

std::vector<std::pair<int, int>> structure(const FiniteCStar& a)
{
    std::vector<std::pair<int, int>> s;
    for (const auto& b : a.blocks)
        s.emplace_back(b.block_dim, b.multiplicity);
    std::sort(s.begin(), s.end());
    return s;
}

} // namespace

TEST_SUITE("algebra") {

TEST_CASE("unital closure of no generators is the scalars")
{
    const auto a = generate(3, std::vector<Matrix>{}, Tolerance{}, 1);
    REQUIRE(a.dimension() == 1);
    CHECK((a.basis[0] - identity(3) / std::sqrt(3.0)).norm() < 1e-12);
    REQUIRE(a.blocks.size() == 1);
    CHECK(a.blocks[0].block_dim == 1);
    CHECK(a.blocks[0].multiplicity == 3);
}

TEST_CASE("diag(1,2) generates C^2")
{
    const auto a = generate(2, std::vector<Matrix>{test::diag({1, 2})}, Tolerance{}, 1);
    CHECK(a.dimension() == 2);
    CHECK(structure(a) == std::vector<std::pair<int, int>>{{1, 1}, {1, 1}});
    CHECK(is_commutative(a, Tolerance{}));
    CHECK(center(a, Tolerance{}).dimension == 2);
}

TEST_CASE("a nilpotent generator yields all of M2")
{
    const Matrix n = test::mat(2, {0, 1, 0, 0});
    const auto a = generate(2, std::vector<Matrix>{n}, Tolerance{}, 2);
    CHECK(a.dimension() == 4);
    CHECK(closure_dimension(2, {n}) == 4);
    CHECK(structure(a) == std::vector<std::pair<int, int>>{{2, 1}});
    CHECK_FALSE(is_commutative(a, Tolerance{}));
    CHECK(center(a, Tolerance{}).dimension == 1);
}

TEST_CASE("center dimensions of M2, the diagonal of M3 and M2 + C")
{
    const Tolerance tol;
    const auto m2 = generate(2, std::vector<Matrix>{test::mat(2, {1, 2, 3, 4}), test::mat(2, {0, 1, 0, 0})}, tol, 3);
    CHECK(center(m2, tol).dimension == 1);
    const auto d3 = generate(3, std::vector<Matrix>{test::diag({1, 2, 3})}, tol, 3);
    CHECK(center(d3, tol).dimension == 3);
    const Matrix g = test::block_diag(test::mat(2, {0, 1, 0, 0}), Matrix::Zero(1, 1));
    const auto mix = generate(3, std::vector<Matrix>{g}, tol, 3);
    CHECK(mix.dimension() == 5);
    CHECK(center(mix, tol).dimension == 2);
    CHECK(center_oracle(mix) == 2);
}

TEST_CASE("generator size mismatch is rejected")
{
    CHECK_THROWS_AS(generate(3, std::vector<Matrix>{identity(2)}, Tolerance{}, 1), DimensionMismatch);
}

TEST_CASE("planted Wedderburn structures are recovered")
{
    const Tolerance tol;
    const auto corpus = acceptance::algebra_corpus(77);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& c = corpus[i];
        CAPTURE(c.name);
        const auto a = generate(c.ambient_dim, c.generators, tol, 100 + i);
        CHECK(structure(a) == c.structure);
        int dim = 0;
        for (const auto& [n, m] : c.structure)
            dim += n * n;
        CHECK(a.dimension() == dim);
    }
}

TEST_CASE("random generator sets: closure, idempotence, center and commutativity")
{
    const Tolerance tol;
    Rng rng(31);
    std::uniform_int_distribution<int> dim(1, 6), count(0, 2), kind(0, 2);
    for (int t = 0; t < 40; ++t) {
        const int n = dim(rng);
        std::vector<Matrix> gens;
        const int k = count(rng);
        for (int g = 0; g < k; ++g) {
            switch (kind(rng)) {
            case 0:
                gens.push_back(random_complex(n, n, rng));
                break;
            case 1: {
                // Commuting family: functions of one Hermitian matrix.
                const Matrix u = random_unitary(n, rng);
                Vector d(n);
                for (int i = 0; i < n; ++i)
                    d(i) = static_cast<double>(i % 2);
                gens.push_back(u * d.asDiagonal() * u.adjoint());
                break;
            }
            default: {
                // Block-diagonal with a repeated block.
                const int h = n / 2;
                Matrix m = Matrix::Zero(n, n);
                if (h > 0) {
                    const Matrix x = random_complex(h, h, rng);
                    m.topLeftCorner(h, h) = x;
                    m.block(h, h, h, h) = x;
                }
                gens.push_back(m);
            }
            }
        }
        CAPTURE(t);
        const auto a = generate(n, gens, tol, 500 + t);
        CHECK(a.dimension() == closure_dimension(n, gens));
        int sq = 0, amb = 0;
        bool all_one = true;
        for (const auto& b : a.blocks) {
            sq += b.block_dim * b.block_dim;
            amb += b.block_dim * b.multiplicity;
            all_one = all_one && b.block_dim == 1;
        }
        CHECK(sq == a.dimension());
        CHECK(amb == n);
        const auto again = generate(n, a.basis, tol, 900 + t);
        CHECK(span_distance(a.basis, again.basis) <= tol.eps_verify);
        CHECK(center(a, tol).dimension == static_cast<int>(a.blocks.size()));
        CHECK(center_oracle(a) == static_cast<int>(a.blocks.size()));
        CHECK(is_commutative(a, tol) == all_one);
        for (const auto& g : gens)
            CHECK(a.membership_residual(g) <= tol.eps_verify);
    }
}

TEST_CASE("block maps are *-homomorphisms onto full matrix blocks")
{
    const Tolerance tol;
    Rng rng(32);
    const auto corpus = acceptance::algebra_corpus(5);
    const auto& c = corpus.back();
    const auto a = generate(c.ambient_dim, c.generators, tol, 3);
    for (int t = 0; t < 5; ++t) {
        const Matrix x = a.element(random_complex(a.dimension(), 1, rng).col(0));
        const Matrix y = a.element(random_complex(a.dimension(), 1, rng).col(0));
        for (std::size_t b = 0; b < a.blocks.size(); ++b) {
            const Matrix bx = a.block_matrix(b, x), by = a.block_matrix(b, y);
            CHECK(test::rel(a.block_matrix(b, x * y), bx * by) < 1e-10);
            CHECK(test::rel(a.block_matrix(b, x.adjoint()), bx.adjoint()) < 1e-10);
        }
        CHECK((a.element(a.coefficients(x)) - x).norm() < 1e-10 * std::max(1.0, x.norm()));
    }
}

}
