#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ncdual/numeric.hpp"

namespace ncdual {

/// A finite lattice with a complementation, given by explicit tables.
struct FiniteLattice {
    int size = 0;
    std::vector<int> meet;  // row-major size x size
    std::vector<int> join;
    std::vector<int> complement;
    int zero = 0;
    int one = 0;
    std::string name;

    int m(int a, int b) const { return meet[static_cast<std::size_t>(a) * size + b]; }
    int j(int a, int b) const { return join[static_cast<std::size_t>(a) * size + b]; }
    int c(int a) const { return complement[a]; }
    bool leq(int a, int b) const { return m(a, b) == a; }

    /// Throws InputError on malformed tables or failing lattice laws
    /// (commutativity, associativity, absorption, bounds).
    void validate() const;
};

using IndexPair = std::pair<int, int>;

struct OmlReport {
    std::vector<int> involution_failures;
    std::vector<IndexPair> order_reversal_failures;
    std::vector<int> complement_failures;
    /// Pairs s <= t with s v (s' ^ t) != t.
    std::vector<IndexPair> orthomodular_failures;

    bool ok() const
    {
        return involution_failures.empty() && order_reversal_failures.empty() && complement_failures.empty() &&
               orthomodular_failures.empty();
    }
};

OmlReport is_oml(const FiniteLattice& l);

/// a ∧̇ b = (a ∨ b') ∧ b.
int dot_meet(const FiniteLattice& l, int a, int b);

/// Dot-meet symmetric on every pair.
bool is_boolean(const FiniteLattice& l);
/// Independent check: a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c) on every triple.
bool is_distributive(const FiniteLattice& l);

struct StoneReport {
    std::vector<int> atoms;
    /// image[a] = bit set of the atoms below a.
    std::vector<unsigned> image;
    bool bijective = false;
    bool preserves_meet = false;
    bool preserves_join = false;
    bool preserves_complement = false;

    bool ok() const { return bijective && preserves_meet && preserves_join && preserves_complement; }
};

/// Representation a -> {atoms below a}. Throws NotBoolean.
StoneReport stone(const FiniteLattice& l);

/// Power set of k atoms; element i is the subset with bit mask i.
FiniteLattice boolean_algebra(int k);
/// 0, a, a', b, b', 1 with a, b incomparable.
FiniteLattice mo2();
/// 0 < a < b < 1 and c incomparable; c' is a (variant 0) or b (variant 1).
FiniteLattice pentagon(int variant);

struct ProjectionLattice {
    FiniteLattice lattice;
    std::vector<Matrix> elements;
};

/// Closes {0, 1, generators} under range meet, range join and I - P.
/// Throws InputError past max_size elements.
ProjectionLattice projection_lattice(const std::vector<Matrix>& generators, const Tolerance& tol,
                                     int max_size = 64);

} // namespace ncdual
