#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ncdual/numeric.hpp"

namespace ncdual {

/// One simple summand M_n of the algebra. `isometry` (ambient x block_dim)
/// spans one irreducible copy; a -> isometry* a isometry is the block map.
struct Block {
    int block_dim = 0;
    int multiplicity = 0;
    Matrix isometry;
    Matrix central_projection;
};

/// A unital *-subalgebra of M_n with its Wedderburn block structure.
///
/// `basis` is Hilbert-Schmidt orthonormal and spans the algebra generated by
/// `generators` and the identity. Blocks record each M_{n_i} once; their
/// multiplicities in the ambient space are kept for reference.
struct FiniteCStar {
    int ambient_dim = 0;
    std::vector<Matrix> generators;
    std::vector<Matrix> basis;
    std::vector<Matrix> center_basis;
    std::vector<Block> blocks;

    int dimension() const { return static_cast<int>(basis.size()); }

    /// HS coordinates of x against the basis.
    Vector coefficients(const Matrix& x) const;
    Matrix element(const Vector& coefficients) const;
    /// ||x - P(x)||_F relative to max(1, ||x||_F), P the HS projection onto the algebra.
    double membership_residual(const Matrix& x) const;
    /// The block-c matrix of x.
    Matrix block_matrix(std::size_t c, const Matrix& x) const;
    /// Sum of block_dim over all blocks (number of skeleton states).
    int skeleton_size() const;
};

/// A finite quotient q: X -> Y, stored as point labels and the class index of each point.
struct QuantumSpace {
    std::vector<std::string> points;
    std::vector<int> class_of;

    int num_classes() const;
    std::vector<std::vector<int>> classes() const;
    /// Throws InputError unless classes are numbered 0..k-1, each non-empty.
    void validate() const;
};

/// Smallest unital *-algebra containing `generators`, with block decomposition.
/// Throws DimensionMismatch if any generator is not ambient_dim square.
FiniteCStar generate(int ambient_dim, std::span<const Matrix> generators, const Tolerance& tol,
                     std::uint64_t seed);

struct CenterResult {
    int dimension = 0;
    std::vector<Matrix> basis;
};

/// {z in A : zb = bz for all b in A}, solved as a linear commutation system.
CenterResult center(const FiniteCStar& a, const Tolerance& tol);

/// True iff all basis elements commute up to eps_verify.
bool is_commutative(const FiniteCStar& a, const Tolerance& tol);

/// Mutual HS-projection residual between the spans of two bases (0 when equal).
double span_distance(std::span<const Matrix> a, std::span<const Matrix> b);

} // namespace ncdual
