#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncdual/algebra.hpp"
#include "ncdual/relation.hpp"

namespace ncdual {

/// A finite group given by its composition table.
class FiniteGroup {
public:
    FiniteGroup() = default;
    /// table is row-major: table[i * order + j] = i * j. Throws InputError
    /// with the first failing law, e.g. "table not associative at (i,j,k)".
    FiniteGroup(int order, std::vector<int> table, std::string name = {});

    static FiniteGroup cyclic(int n);
    static FiniteGroup dihedral(int n);
    static FiniteGroup symmetric3();
    static FiniteGroup quaternion();
    static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);
    /// "Z<n>", "S3", "D<n>", "Q8" and products joined by 'x', e.g. "Z2xZ4".
    static FiniteGroup named(const std::string& name);

    int order() const { return order_; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
    int identity() const { return identity_; }
    int inverse(int a) const { return inverses_[a]; }
    const std::vector<int>& table() const { return table_; }
    const std::string& name() const { return name_; }
    bool is_abelian() const;

private:
    int order_ = 0;
    std::vector<int> table_;
    int identity_ = 0;
    std::vector<int> inverses_;
    std::string name_;
};

struct Irrep {
    int dim = 0;
    /// rep[g] for each group element.
    std::vector<Matrix> rep;
};

/// Irreducible unitary representations from the block decomposition of the
/// algebra generated by the regular representation.
std::vector<Irrep> irreps(const FiniteGroup& g, std::uint64_t seed, const Tolerance& tol);

/// Largest ||rho(g) rho(h) - rho(gh)|| and ||rho(g)* rho(g) - 1|| over all irreps.
double irrep_residual(const FiniteGroup& g, const std::vector<Irrep>& reps);

/// A group object among quantum spaces: the quotient X -> Y with a partial
/// multiplication on X (-1 where undefined) and the induced class law on Y.
struct QuantumGroup {
    QuantumSpace space;
    std::vector<int> product;
    /// class_law[y]: class receiving products inside class y, -1 if none.
    std::vector<int> class_law;
    bool abelian = false;
    bool commutative_topology = false;
    std::string name;

    int size() const { return static_cast<int>(space.points.size()); }
    int mul(int x, int y) const { return product[static_cast<std::size_t>(x) * size() + y]; }
    /// Throws InputError unless products inside each class land in the class
    /// given by class_law, and the flags match the data.
    void validate() const;
};

QuantumGroup as_quantum_group(const FiniteGroup& g);
/// The dual: one point per skeleton vector of the group algebra, one class per
/// irrep. Characters multiply pointwise; higher-dimensional irreps carry no
/// product.
QuantumGroup dual(const FiniteGroup& g, const Tolerance& tol, std::uint64_t seed);
/// The quantum space itself with the diagonal multiplication x x = x.
QuantumGroup pure_quantum_space(const QuantumSpace& s);

struct ComultiplicationReport {
    int relation_pairs = 0;
    double coassociativity_residual = 0.0;
    bool nondegenerate = false;
    bool is_group = false;
    bool verdict_matches = false;
    /// Pairs (u, v) of the relation whose product is undefined.
    int undefined_products = 0;
    std::string note;
};

/// d(mu)(u, v) = mu(uv) on the relation of the quantum group, where
/// (x, y)(x', y') = (xx', yy') when both products exist and land in the relation.
ComultiplicationReport comultiplication_check(const QuantumGroup& q, const Tolerance& tol, std::uint64_t seed);
ComultiplicationReport comultiplication_check(const FiniteGroup& g, const Tolerance& tol, std::uint64_t seed);

struct DoubleDualReport {
    int order = 0;
    int dual_order = 0;
    int double_dual_order = 0;
    bool bijective = false;
    bool homomorphism = false;
    double character_residual = 0.0;
    /// evaluation[g] = index of the double-dual element chi -> chi(g).
    std::vector<int> evaluation;

    bool ok() const { return bijective && homomorphism; }
};

/// Classical Pontryagin duality at finite scale. Throws NotAbelian.
DoubleDualReport double_dual_abelian(const FiniteGroup& g, const Tolerance& tol, std::uint64_t seed);

/// The character group as a FiniteGroup (characters ordered as irreps() returns them).
FiniteGroup character_group(const FiniteGroup& g, const Tolerance& tol, std::uint64_t seed);

struct BlockAgreementReport {
    std::vector<int> group_algebra_blocks;
    std::vector<int> dual_measure_blocks;
    bool agree = false;
};

/// Block structure of C[G] against that of the measure algebra on the dual's relation.
BlockAgreementReport dual_block_agreement(const FiniteGroup& g, const Tolerance& tol, std::uint64_t seed);

/// One of abelian-commutative, nonabelian-commutative, abelian-noncommutative,
/// nonabelian-noncommutative.
std::string classify(const QuantumGroup& q);

} // namespace ncdual
