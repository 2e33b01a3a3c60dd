#include <doctest.h>

#include <bit>

#include "ncdual/errors.hpp"
#include "ncdual/oml.hpp"
#include "support.hpp"

using namespace ncdual;

TEST_SUITE("oml") {

TEST_CASE("Boolean algebras and MO2 are orthomodular, pentagons are not")
{
    for (int k = 0; k <= 4; ++k) {
        const FiniteLattice l = boolean_algebra(k);
        CHECK_NOTHROW(l.validate());
        CHECK(l.size == (1 << k));
        CHECK(is_oml(l).ok());
    }
    const FiniteLattice m = mo2();
    CHECK_NOTHROW(m.validate());
    CHECK(m.size == 6);
    CHECK(is_oml(m).ok());
    for (int v : {0, 1}) {
        const FiniteLattice p = pentagon(v);
        CHECK_NOTHROW(p.validate());
        CHECK(!is_oml(p).ok());
    }
}

TEST_CASE("dot-meet")
{
    const FiniteLattice m = mo2();
    for (int a = 0; a < m.size; ++a)
        CHECK(dot_meet(m, a, a) == a);
    CHECK(dot_meet(m, 1, 3) == 3);
    CHECK(dot_meet(m, 3, 1) == 1);

    const FiniteLattice b = boolean_algebra(3);
    for (int x = 0; x < b.size; ++x)
        for (int y = 0; y < b.size; ++y) {
            CHECK(dot_meet(b, x, y) == b.m(x, y));
            CHECK(b.m(x, y) == (x & y));
            CHECK(b.j(x, y) == (x | y));
        }
}

TEST_CASE("Boolean and distributive detection")
{
    CHECK(is_boolean(boolean_algebra(3)));
    CHECK(is_distributive(boolean_algebra(3)));
    CHECK(!is_boolean(mo2()));
    CHECK(!is_distributive(mo2()));

    const Tolerance tol;
    const auto diag3 = projection_lattice({test::diag({1, 0, 0}), test::diag({0, 1, 0})}, tol);
    CHECK(diag3.lattice.size == 8);
    CHECK(is_oml(diag3.lattice).ok());
    CHECK(is_boolean(diag3.lattice));
    for (const Matrix& p : diag3.elements)
        CHECK((p * p - p).norm() < 1e-12);

    const auto m2 = projection_lattice({test::diag({1, 0}), Matrix::Constant(2, 2, 0.5)}, tol);
    CHECK(m2.lattice.size == 6);
    CHECK(is_oml(m2.lattice).ok());
    CHECK(!is_boolean(m2.lattice));

    Rng rng(61);
    std::vector<Matrix> many;
    for (int i = 0; i < 6; ++i) {
        const Matrix v = random_complex(3, 1, rng);
        many.push_back(projector(v, tol));
    }
    CHECK_THROWS_AS(projection_lattice(many, tol, 16), InputError);
}

TEST_CASE("Stone representation")
{
    for (int k : {2, 4}) {
        const FiniteLattice l = boolean_algebra(k);
        const StoneReport s = stone(l);
        CHECK(s.ok());
        REQUIRE(static_cast<int>(s.atoms.size()) == k);
        for (int a = 0; a < l.size; ++a)
            CHECK(std::popcount(s.image[a]) == std::popcount(static_cast<unsigned>(a)));
    }
    CHECK(boolean_algebra(4).size == 16);
    CHECK_THROWS_AS(stone(mo2()), NotBoolean);
}

TEST_CASE("malformed lattices are rejected")
{
    FiniteLattice l = boolean_algebra(2);
    l.meet.pop_back();
    CHECK_THROWS_AS(l.validate(), InputError);

    l = boolean_algebra(2);
    l.meet[1 * 4 + 2] = 1;  // breaks commutativity
    CHECK_THROWS_AS(l.validate(), InputError);

    l = boolean_algebra(2);
    l.complement[0] = 9;
    CHECK_THROWS_AS(l.validate(), InputError);
}

}
