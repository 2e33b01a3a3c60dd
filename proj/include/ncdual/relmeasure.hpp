#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ncdual/algebra.hpp"
#include "ncdual/relation.hpp"

namespace ncdual {

/// A finitely supported complex measure on a finite equivalence relation.
/// weights(x, y) is the mass of the pair (x, y); it vanishes off the relation.
struct RelMeasure {
    FinEquivRel relation;
    Matrix weights;

    Complex operator()(int x, int y) const { return weights(x, y); }
    /// Throws InputError if mass sits outside relation.pairs.
    void validate() const;
};

RelMeasure zero_measure(const FinEquivRel& r);
/// The unit of convolution: mass 1 on every diagonal pair.
RelMeasure delta_measure(const FinEquivRel& r);
RelMeasure point_mass(const FinEquivRel& r, int x, int y, Complex w = 1.0);
RelMeasure random_measure(const FinEquivRel& r, Rng& rng);

/// Measure of an algebra element on the skeleton relation: for each block and
/// skeleton pair (k, j) the weight is the block-matrix entry a_{jk}.
/// Throws NotInAlgebra when a is not in alg up to eps_verify.
RelMeasure hat_measure(const Matrix& a, const FiniteCStar& alg, const Tolerance& tol);

/// Product of CM(R): (m1 * m2)(x, z) = sum_y m2(x, y) m1(y, z), the order that
/// makes hat_measure multiplicative. Throws RelationMismatch.
RelMeasure convolve(const RelMeasure& m1, const RelMeasure& m2);
/// m*(x, y) = conj(m(y, x)).
RelMeasure adjoint(const RelMeasure& m);

/// Matrix image of a measure, T(m)(y, x) = m(x, y); T(m1 * m2) = T(m1) T(m2).
Matrix measure_matrix(const RelMeasure& m);
/// C*-norm of the measure: the largest operator norm over its class blocks.
double block_norm(const RelMeasure& m);

struct AlgebraRoundtripReport {
    int algebra_dimension = 0;
    int relation_pairs = 0;
    std::vector<int> block_dims;
    double linearity_residual = 0.0;
    double multiplicativity_residual = 0.0;
    double star_residual = 0.0;
    double isometry_residual = 0.0;
    bool injective = false;
    bool surjective = false;
    bool dimension_match = false;
    std::string identification;

    double max_residual() const;
    bool passed(double bound) const;
};

/// Checks that a -> hat_measure(a) is a *-isomorphism of alg onto CM(R(alg)).
AlgebraRoundtripReport duality_roundtrip_algebra(const FiniteCStar& alg, const Tolerance& tol, std::uint64_t seed);

struct RelationRoundtripReport {
    std::vector<int> expected_sizes;
    std::vector<int> recovered_sizes;
    int algebra_dimension = 0;
    double convolution_residual = 0.0;
    /// matching[c] = recovered class index carried by original class c.
    std::vector<int> matching;
    bool matched = false;
};

/// Builds CM(r) as matrices, recomputes its relation through GNS equivalence,
/// and compares class sizes.
RelationRoundtripReport duality_roundtrip_relation(const FinEquivRel& r, const Tolerance& tol, std::uint64_t seed);

} // namespace ncdual
