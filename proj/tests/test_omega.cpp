#include <doctest.h>

#include <algorithm>
#include <set>

#include "ncdual/errors.hpp"
#include "ncdual/omega.hpp"
#include "ncdual/spectral.hpp"
#include "support.hpp"

using namespace ncdual;

namespace {

using Pairs = std::set<std::pair<int, int>>;

std::shared_ptr<const FinEquivRel> parent_of(const std::vector<int>& cls)
{
    std::vector<std::string> pts;
    for (std::size_t k = 0; k < cls.size(); ++k)
        pts.push_back(std::string(1, static_cast<char>('a' + k)));
    return std::make_shared<const FinEquivRel>(pts, cls);
}

Pairs pairs_of(const SubRel& u)
{
    const auto v = u.pairs();
    return Pairs(v.begin(), v.end());
}

// Oracles on plain pair sets.
Pairs compose(const Pairs& u, const Pairs& v)
{
    Pairs out;
    for (const auto& [x, y] : u)
        for (const auto& [y2, z] : v)
            if (y == y2)
                out.emplace(x, z);
    return out;
}

Pairs closure(Pairs p)
{
    for (bool grew = true; grew;) {
        grew = false;
        const Pairs c = compose(p, p);
        for (const auto& e : c)
            grew |= p.insert(e).second;
    }
    return p;
}

bool is_partial_equivalence(const Pairs& p)
{
    for (const auto& [x, y] : p)
        if (!p.count({y, x}) || !p.count({x, x}))
            return false;
    return compose(p, p) == p;
}

// Brute force: all subsets of the parent's pairs that are equivalence relations on their support.
std::size_t brute_force_count(const FinEquivRel& r)
{
    const auto all = r.pairs();
    std::size_t count = 0;
    for (std::uint32_t mask = 0; mask < (1u << all.size()); ++mask) {
        Pairs p;
        for (std::size_t k = 0; k < all.size(); ++k)
            if (mask >> k & 1u)
                p.insert(all[k]);
        count += is_partial_equivalence(p);
    }
    return count;
}

SubRel sub(const std::shared_ptr<const FinEquivRel>& p, std::vector<int> labels)
{
    return SubRel(p, std::move(labels));
}

} // namespace

TEST_SUITE("omega") {

TEST_CASE("meet examples")
{
    const auto p = parent_of({0, 0, 0});
    const SubRel ab = sub(p, {0, 0, -1}), bc = sub(p, {-1, 0, 0});
    const SubRel e = SubRel::empty(p);
    CHECK(meet(ab, ab) == ab);
    CHECK(meet(ab, e) == e);
    CHECK(meet(ab, bc) == sub(p, {-1, 0, -1}));
}

TEST_CASE("join examples")
{
    const auto p = parent_of({0, 0, 0, 0});
    const SubRel ab = sub(p, {0, 0, -1, -1}), bc = sub(p, {-1, 0, 0, -1}), cd = sub(p, {-1, -1, 0, 0});
    CHECK(join(ab, SubRel::empty(p)) == ab);
    CHECK(join(ab, bc) == sub(p, {0, 0, 0, -1}));
    CHECK(join(ab, cd) == sub(p, {0, 0, 1, 1}));
}

TEST_CASE("relational product examples")
{
    const auto p = parent_of({0, 0, 0});
    const SubRel ab = sub(p, {0, 0, -1}), bc = sub(p, {-1, 0, 0});
    CHECK(relprod(ab, ab) == PairSet::of(ab));
    CHECK(relprod(SubRel::empty(p), bc) == PairSet::of(SubRel::empty(p)));
    CHECK(relprod(ab, bc).contains(0, 2));
    CHECK_FALSE(relprod(ab, bc).contains(2, 0));
    CHECK_FALSE(commute(ab, bc));
}

TEST_CASE("sub-relations must respect parent classes and parents must match")
{
    const auto p = parent_of({0, 0, 1});
    CHECK_THROWS_AS(sub(p, {0, -1, 0}), InputError);
    CHECK_THROWS_AS(SubRel::from_pairs(p, {{0, 1}}), InputError);
    CHECK_NOTHROW(SubRel::from_pairs(p, {{0, 1}, {1, 0}, {0, 0}, {1, 1}}));
    // Equal parents held by different pointers are the same relation.
    CHECK_NOTHROW(meet(SubRel::full(p), SubRel::full(parent_of({0, 0, 1}))));
    const auto q = parent_of({0, 1, 1});
    CHECK_THROWS_AS(meet(SubRel::full(p), SubRel::full(q)), ParentMismatch);
    CHECK_THROWS_AS(enumerate_omega(parent_of({0, 0, 0, 0, 0, 0})), InputError);
}

TEST_CASE("enumeration matches brute force and the Bell-number count")
{
    // A class of size k has Bell(k + 1) partial partitions.
    const int bell[] = {1, 1, 2, 5, 15, 52, 203};
    for (int n = 1; n <= 4; ++n)
        for (const auto& cls : all_partitions(n)) {
            const auto p = parent_of(cls);
            const auto om = enumerate_omega(p);
            std::size_t expect = 1;
            for (int s : p->class_sizes())
                expect *= bell[s + 1];
            CHECK(om.size() == expect);
            CHECK(om.size() == brute_force_count(*p));
        }
    CHECK(enumerate_omega(parent_of({0, 0, 0, 0, 0})).size() == 203);
}

TEST_CASE("operations agree with pair-set oracles and every element is idempotent")
{
    for (int n = 1; n <= 4; ++n)
        for (const auto& cls : all_partitions(n)) {
            const auto om = enumerate_omega(parent_of(cls));
            for (const auto& u : om) {
                CHECK(relprod(u, u) == PairSet::of(u));
                for (const auto& v : om) {
                    const Pairs pu = pairs_of(u), pv = pairs_of(v);
                    Pairs inter, uni = pu;
                    for (const auto& e : pu)
                        if (pv.count(e))
                            inter.insert(e);
                    uni.insert(pv.begin(), pv.end());
                    CHECK(pairs_of(meet(u, v)) == inter);
                    CHECK(pairs_of(join(u, v)) == closure(uni));
                    const PairSet rp = relprod(u, v);
                    for (const auto& [x, z] : compose(pu, pv))
                        CHECK(rp.contains(x, z));
                    int count = 0;
                    for (char b : rp.bits)
                        count += b != 0;
                    CHECK(count == static_cast<int>(compose(pu, pv).size()));
                }
            }
        }
}

TEST_CASE("five-point idempotence and the true direction of join = product")
{
    for (const auto& cls : all_partitions(5)) {
        const auto t = omega_tables(enumerate_omega(parent_of(cls)));
        const auto r = omega_laws(t);
        CHECK(r.idempotence_failures == 0);
        CHECK(r.forward_failures == 0);
        CHECK(r.lattice_law_failures == 0);
    }
}

TEST_CASE("lattice laws hold exhaustively up to four points")
{
    for (int n = 1; n <= 4; ++n)
        for (const auto& cls : all_partitions(n))
            CHECK(omega_laws(omega_tables(enumerate_omega(parent_of(cls)))).lattice_law_failures == 0);
}

TEST_CASE("commuting pairs whose join differs from the product exist on one point")
{
    const auto p = parent_of({0});
    const SubRel e = SubRel::empty(p), d = SubRel::full(p);
    CHECK(commute(e, d));
    CHECK_FALSE(PairSet::of(join(e, d)) == relprod(e, d));
    const auto r = omega_laws(omega_tables(enumerate_omega(p)));
    CHECK(r.reverse_failures > 0);
    REQUIRE(r.reverse_witness.has_value());
}

TEST_CASE("a distributive Omega with non-commuting elements exists on a two-point class")
{
    const auto p = parent_of({0, 0});
    const auto r = omega_laws(omega_tables(enumerate_omega(p)));
    CHECK(r.distributivity_failures == 0);
    CHECK_FALSE(r.all_commute);
    CHECK_FALSE(r.distributive_iff_commute);
    const SubRel a = sub(p, {0, -1}), ab = SubRel::full(p);
    CHECK_FALSE(commute(a, ab));
}

TEST_CASE("restricted to full-domain sub-relations both equivalences hold")
{
    for (int n = 1; n <= 4; ++n)
        for (const auto& cls : all_partitions(n)) {
            const auto p = parent_of(cls);
            std::vector<SubRel> full;
            for (const auto& u : enumerate_omega(p))
                if (static_cast<int>(u.domain().size()) == p->size())
                    full.push_back(u);
            const auto r = omega_laws(omega_tables(full));
            CHECK(r.forward_failures == 0);
            CHECK(r.reverse_failures == 0);
            CHECK(r.distributive_iff_commute);
        }
}

TEST_CASE("generated sublattices are closed and omega_tables rejects open families")
{
    const auto p = parent_of({0, 0, 0, 1});
    const SubRel ab = sub(p, {0, 0, -1, -1}), c = sub(p, {-1, -1, 0, -1});
    const auto g = generated_sublattice({ab, c});
    CHECK_NOTHROW(omega_tables(g));
    CHECK(std::find(g.begin(), g.end(), join(ab, c)) != g.end());
    CHECK(std::find(g.begin(), g.end(), SubRel::empty(p)) != g.end());
    CHECK_THROWS_AS(omega_tables({ab, c}), InputError);
}

TEST_CASE("spectral measure of a normal matrix passes the axioms; a swapped assignment fails")
{
    const Tolerance tol;
    const SpectralFamily f = spectral_family(test::diag({1, 2, 3}), tol);
    ElementaryMeasure e = f.orthogonal_measure();
    const auto good = elementary_axioms(e, tol);
    CHECK(good.passed(1e-10));
    CHECK(good.pairs_checked > 0);
    CHECK(elementary_axioms(f.oblique_measure(), tol).passed(1e-10));

    // Swap a single block with a two-block union above it. A swap of two
    // single blocks would only relabel the family and still pass.
    int i = -1, j = -1;
    for (std::size_t k = 0; k < e.domain.size(); ++k)
        if (i < 0 && e.domain[k].pair_count() == 1)
            i = static_cast<int>(k);
    for (std::size_t k = 0; k < e.domain.size(); ++k)
        if (j < 0 && e.domain[k].pair_count() == 2 && e.domain[i].subset_of(e.domain[k]))
            j = static_cast<int>(k);
    REQUIRE(i >= 0);
    REQUIRE(j >= 0);
    std::swap(e.values[i], e.values[j]);
    const auto bad = elementary_axioms(e, tol);
    CHECK(bad.meet_residual > 1e-6);
}

}
