#pragma once

#include <memory>
#include <vector>

#include "ncdual/analytic.hpp"
#include "ncdual/numeric.hpp"
#include "ncdual/omega.hpp"

namespace ncdual {

struct JordanBlock {
    Complex eigenvalue;
    int size = 0;
    /// Offset of the block's first (bottom) chain vector in the Jordan basis.
    int position = 0;
};

/// source = V J V^{-1}. Column `position` of V is the eigenvector of its
/// block and column position + i is mapped to column position + i - 1 by
/// (source - eigenvalue).
struct JordanDecomposition {
    Matrix source;
    Matrix basis_change;
    Matrix basis_change_inverse;
    std::vector<JordanBlock> blocks;
    /// ||source - V J V^{-1}||_F.
    double residual = 0.0;
    /// Largest spectral-projector norm over the eigenvalue clusters.
    double projector_norm = 0.0;

    int dim() const { return static_cast<int>(source.rows()); }
    Matrix jordan_matrix() const;
    /// Block sizes in decreasing order (per eigenvalue use blocks directly).
    std::vector<int> sorted_sizes() const;
};

/// Numeric Jordan form. Eigenvalues are clustered by single linkage starting
/// at eps_eig; the finest clustering whose clusters are both well separated
/// (relative to their spectral-projector norms) and nilpotent after
/// shifting is used. Per cluster the block sizes come from kernel dimensions
/// of powers of the shifted restriction.
/// Throws IllConditioned when no admissible clustering exists.
JordanDecomposition jordan(const Matrix& a, const Tolerance& tol);

/// Jordan data read as measures on Omega of the block relation: one point per
/// Jordan basis vector, one class per Jordan block.
struct SpectralFamily {
    JordanDecomposition decomposition;
    std::shared_ptr<const FinEquivRel> relation;
    /// minimal_blocks[b] is the full class of block b.
    std::vector<SubRel> minimal_blocks;
    /// Boolean sublattice generated by the minimal blocks.
    std::vector<SubRel> lattice;
    /// S(U_b) = V P_b (J - lambda_b) V^{-1}.
    std::vector<Matrix> shifts;

    /// Blocks selected by u; throws InputError unless u is a union of
    /// whole minimal blocks.
    std::vector<int> selected_blocks(const SubRel& u) const;
    /// Q(u) = V P_u V^{-1}.
    Matrix oblique(const SubRel& u) const;
    /// Orthogonal projection onto the span of the selected chains.
    Matrix orthogonal(const SubRel& u) const;
    /// Oblique idempotent of a single block.
    Matrix block_idempotent(int b) const;

    ElementaryMeasure oblique_measure() const;
    ElementaryMeasure orthogonal_measure() const;
};

SpectralFamily spectral_family(const Matrix& a, const Tolerance& tol);

/// Sum over blocks of lambda_b Q_b + S_b Q_b.
Matrix reconstruct(const SpectralFamily& f);

/// Finitely supported coefficients on the Jordan blocks: coefficients[b][d]
/// multiplies S_b^d Q_b.
struct RelFunction {
    std::vector<std::vector<Complex>> coefficients;

    /// The unit: 1 at offset 0 on every block.
    static RelFunction unit(const SpectralFamily& f);
    /// mu_z: lambda_b at offset 0 and 1 at offset 1.
    static RelFunction z(const SpectralFamily& f);
    /// Zero coefficients shaped like f's blocks.
    static RelFunction zero(const SpectralFamily& f);
};

/// Truncated Cauchy product per block. Throws DimensionMismatch on shape mismatch.
RelFunction convolve(const RelFunction& mu, const RelFunction& nu);

/// Throws DimensionMismatch if mu is not shaped like f's blocks.
Matrix apply_measure(const RelFunction& mu, const SpectralFamily& f);

/// coefficients[b][d] = fn^(d)(lambda_b) / d!.
RelFunction holomorphic(const AnalyticFunction& fn, const SpectralFamily& f);

struct Circle {
    Complex center;
    double radius = 0.0;
};

/// Default contours: one circle per eigenvalue cluster, radius half the
/// distance to the nearest other cluster (1 when there is a single cluster).
std::vector<Circle> default_contours(const SpectralFamily& f);

/// Riesz integral (1 / 2 pi i) sum over contours of fn(zeta) (zeta - a)^{-1},
/// by the trapezoid rule. Throws ContourTooClose if a contour passes within
/// eps_eig of an eigenvalue, InputError if an eigenvalue is not enclosed
/// exactly once.
Matrix riesz(const AnalyticFunction& fn, const Matrix& a, const std::vector<Circle>& contours, const Tolerance& tol,
             int nodes = 256);

/// Orthogonal projection onto the eigenvector of the first Jordan chain.
/// Throws InputError for dim < 2.
Matrix invariant_subspace(const Matrix& a, const Tolerance& tol);

} // namespace ncdual
