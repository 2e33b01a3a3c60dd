#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ncdual {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Rng = std::mt19937_64;

/// Numerical tolerance policy shared by every module.
///
/// eps_rank cuts singular values (relative to the largest, floored at 1),
/// eps_eig is the single-linkage radius for eigenvalue clustering and
/// eps_verify is the acceptance bound for residual checks.
struct Tolerance {
    double eps_rank = 1e-9;
    double eps_eig = 1e-7;
    double eps_verify = 1e-8;

    /// Throws InputError unless all three are positive and eps_rank <= eps_verify.
    void validate() const;
};

struct EigenCluster {
    Complex value;
    int multiplicity = 0;
};

/// Clustered spectrum. Raw eigensolver output is merged by single linkage at
/// radius eps_eig; the reported value of a cluster is its mean.
std::vector<EigenCluster> eig(const Matrix& m, const Tolerance& tol);

/// Number of singular values above eps_rank * max(sigma_max, 1).
int rank(const Matrix& m, const Tolerance& tol);

/// Orthonormal basis (columns) of the kernel, consistent with rank():
/// rank(m) + null_space(m).cols() == m.cols().
Matrix null_space(const Matrix& m, const Tolerance& tol);

/// Orthonormal basis (columns) of the column space.
Matrix range_basis(const Matrix& m, const Tolerance& tol);

/// Singular values in decreasing order.
Eigen::VectorXd singular_values(const Matrix& m);

double op_norm(const Matrix& m);
double hs_norm(const Matrix& m);
/// Hilbert-Schmidt inner product tr(a* b).
Complex hs_inner(const Matrix& a, const Matrix& b);
/// sigma_max / sigma_min; infinity for singular input.
double condition_number(const Matrix& m);

Matrix adjoint(const Matrix& m);
Matrix identity(int n);

bool is_finite(const Matrix& m);
/// Throws InputError naming `what` if m is empty, non-square or not finite.
void require_square_finite(const Matrix& m, const std::string& what);

/// Orthogonal projection onto the span of the columns of `basis`.
Matrix projector(const Matrix& basis, const Tolerance& tol);
/// Projection onto the intersection of the ranges of p and q.
Matrix projection_meet(const Matrix& p, const Matrix& q, const Tolerance& tol);
/// Projection onto the sum of the ranges of p and q.
Matrix projection_join(const Matrix& p, const Matrix& q, const Tolerance& tol);

/// Single-linkage cluster labels at the given radius. Labels are numbered in
/// order of first appearance.
std::vector<int> single_linkage(std::span<const Complex> values, double radius);

/// Column-major flattening.
Vector vec(const Matrix& m);

Matrix random_complex(int rows, int cols, Rng& rng);
Matrix random_unitary(int n, Rng& rng);
Matrix random_hermitian(int n, Rng& rng);

} // namespace ncdual
