#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ncdual/numeric.hpp"
#include "ncdual/relation.hpp"

namespace ncdual {

/// A sub-equivalence relation of a parent relation R: an equivalence relation
/// on some subset of the points, each class inside one class of R.
/// Stored as a partial partition; label -1 marks a point outside the domain.
class SubRel {
public:
    SubRel() = default;
    /// labels are renumbered by first appearance; -1 stays -1.
    SubRel(std::shared_ptr<const FinEquivRel> parent, std::vector<int> labels);

    static SubRel empty(std::shared_ptr<const FinEquivRel> parent);
    static SubRel full(std::shared_ptr<const FinEquivRel> parent);
    /// Throws InputError unless pairs form an equivalence relation on their
    /// support and lie inside the parent.
    static SubRel from_pairs(std::shared_ptr<const FinEquivRel> parent, const std::vector<PointPair>& pairs);

    const FinEquivRel& parent() const { return *parent_; }
    const std::shared_ptr<const FinEquivRel>& parent_ptr() const { return parent_; }
    const std::vector<int>& labels() const { return labels_; }

    bool is_empty() const;
    bool contains(int x, int y) const;
    bool in_domain(int x) const { return labels_[x] >= 0; }
    std::vector<int> domain() const;
    std::vector<PointPair> pairs() const;
    int pair_count() const;
    /// Inclusion of pair sets.
    bool subset_of(const SubRel& o) const;

    bool operator==(const SubRel& o) const { return labels_ == o.labels_; }
    bool operator<(const SubRel& o) const { return labels_ < o.labels_; }

    std::string to_string() const;

private:
    std::shared_ptr<const FinEquivRel> parent_;
    std::vector<int> labels_;
};

/// An arbitrary set of pairs on n points, used for relational products.
struct PairSet {
    int n = 0;
    std::vector<char> bits;

    explicit PairSet(int size = 0) : n(size), bits(static_cast<std::size_t>(size) * size, 0) {}
    bool contains(int x, int y) const { return bits[static_cast<std::size_t>(x) * n + y] != 0; }
    void insert(int x, int y) { bits[static_cast<std::size_t>(x) * n + y] = 1; }
    bool operator==(const PairSet& o) const { return n == o.n && bits == o.bits; }
    static PairSet of(const SubRel& u);
};

/// Intersection of pair sets. Throws ParentMismatch.
SubRel meet(const SubRel& u, const SubRel& v);
/// Smallest sub-relation containing both: equivalence closure of the union.
SubRel join(const SubRel& u, const SubRel& v);
/// Relational product {(x, z) : exists y, (x, y) in u and (y, z) in v}.
PairSet relprod(const SubRel& u, const SubRel& v);
bool commute(const SubRel& u, const SubRel& v);

/// Every sub-relation of a parent with at most kMaxExplicitPoints points.
/// Throws InputError above that; use generated_sublattice instead.
inline constexpr int kMaxExplicitPoints = 5;
std::vector<SubRel> enumerate_omega(std::shared_ptr<const FinEquivRel> parent);
/// Closure of the generators (plus empty and full) under meet and join.
/// Throws InputError if the closure exceeds max_size.
std::vector<SubRel> generated_sublattice(const std::vector<SubRel>& generators, std::size_t max_size = 4096);

/// Meet and join tables for a finite family closed under both operations.
struct OmegaTables {
    std::vector<SubRel> elements;
    std::vector<int> meet;
    std::vector<int> join;
    int index_of(const SubRel& u) const;
};
/// Throws InputError if the family is not closed.
OmegaTables omega_tables(std::vector<SubRel> elements);

struct PairWitness {
    SubRel u;
    SubRel v;
};

struct OmegaLawReport {
    int elements = 0;
    int idempotence_failures = 0;
    int lattice_law_failures = 0;
    /// join == product while the pair does not commute.
    int forward_failures = 0;
    /// commute while join != product.
    int reverse_failures = 0;
    std::optional<PairWitness> reverse_witness;
    int distributivity_failures = 0;
    bool all_commute = false;
    std::optional<PairWitness> non_commuting_witness;
    /// distributive <=> all pairs commute
    bool distributive_iff_commute = false;
};

OmegaLawReport omega_laws(const OmegaTables& t);

/// Elementary measure on a finite sub-lattice of Omega(R) with values in
/// matrices on C^hilbert_dim. Oblique families hold idempotents, orthogonal
/// ones hold orthogonal projections; the lattice operations on values act on
/// their ranges.
struct ElementaryMeasure {
    enum class Flavor { oblique, orthogonal };

    std::shared_ptr<const FinEquivRel> parent;
    std::vector<SubRel> domain;
    std::vector<Matrix> values;
    Flavor flavor = Flavor::orthogonal;
    int hilbert_dim = 0;

    /// Throws InputError if u is outside the domain.
    const Matrix& operator()(const SubRel& u) const;
};

struct ElementaryAxiomReport {
    double empty_residual = 0.0;
    double full_residual = 0.0;
    double meet_residual = 0.0;
    /// Axiom 3 on pairs U, V with U ∧ V = 0.
    double disjoint_pair_residual = 0.0;
    /// Axiom 3 on larger pairwise-disjoint families (triples and the atoms).
    double disjoint_family_residual = 0.0;
    double idempotent_residual = 0.0;
    /// Only for orthogonal families.
    double selfadjoint_residual = 0.0;
    /// Reported on its own: range(E(U)) inside range(E(V)) whenever U <= V.
    double monotonicity_residual = 0.0;
    int pairs_checked = 0;
    int families_checked = 0;

    double max_residual() const;
    bool passed(double bound) const { return max_residual() <= bound; }
};

ElementaryAxiomReport elementary_axioms(const ElementaryMeasure& e, const Tolerance& tol);

} // namespace ncdual
