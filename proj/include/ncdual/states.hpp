#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ncdual/algebra.hpp"
#include "ncdual/relation.hpp"

namespace ncdual {

/// A linear functional on an algebra, given by its values on the algebra basis.
struct State {
    std::shared_ptr<const FiniteCStar> algebra;
    std::vector<Complex> values;
    std::string label;

    Complex operator()(const Matrix& x) const;
    /// The element d of the algebra with s(x) = tr(d x).
    Matrix density() const;
    /// Throws DegenerateState if s(1) is off by more than eps_verify, or if
    /// s(x* x) < -eps_verify for some x.
    void validate(const Tolerance& tol) const;
};

/// Vector state x -> <v, x v> for a unit vector v of the ambient space.
State vector_state(std::shared_ptr<const FiniteCStar> algebra, const Vector& v, std::string label = {});

/// Convex combination sum w_i s_i of states on the same algebra.
State mix(const std::vector<State>& states, const std::vector<double>& weights);

struct GnsRep {
    State state;
    int rep_dim = 0;
    /// Image of each algebra basis element.
    std::vector<Matrix> rep_map;
    Vector cyclic_vector;

    Matrix rep(const Matrix& x) const;
};

/// The pure-state skeleton: for each block i and each column e_j of its
/// isometry, the vector state of that column. Labels are "b<i>.e<j>".
std::vector<State> skeleton_states(std::shared_ptr<const FiniteCStar> a);

/// GNS representation on A / N_s. Throws DegenerateState for a non-normalized s.
GnsRep gns(const State& s, const Tolerance& tol);

/// True iff some invertible (hence some unitary) map intertwines r1 and r2.
bool equivalent(const GnsRep& r1, const GnsRep& r2, const Tolerance& tol, std::uint64_t seed);

/// Dimension of {X : X rep(b) = rep(b) X for all b}; 1 exactly for irreducible reps.
int commutant_dimension(const GnsRep& r, const Tolerance& tol);

/// R(A) on the skeleton: states related iff their GNS representations are equivalent.
FinEquivRel relation(std::shared_ptr<const FiniteCStar> a, const Tolerance& tol, std::uint64_t seed);

/// The "same block" relation on the skeleton, for comparison with relation().
FinEquivRel block_relation(const FiniteCStar& a);

} // namespace ncdual
