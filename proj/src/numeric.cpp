#include "ncdual/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ncdual/errors.hpp"

namespace ncdual {

void Tolerance::validate() const
{
    if (!(eps_rank > 0.0) || !(eps_eig > 0.0) || !(eps_verify > 0.0))
        throw InputError("tolerances must be strictly positive");
    if (eps_rank > eps_verify)
        throw InputError("eps_rank must not exceed eps_verify");
}

namespace {

Eigen::JacobiSVD<Matrix> svd_full_v(const Matrix& m)
{
    return Eigen::JacobiSVD<Matrix>(m, Eigen::ComputeFullV);
}

double rank_threshold(const Eigen::VectorXd& sv, const Tolerance& tol)
{
    const double top = sv.size() > 0 ? sv(0) : 0.0;
    return tol.eps_rank * std::max(top, 1.0);
}

} // namespace

std::vector<int> single_linkage(std::span<const Complex> values, double radius)
{
    const std::size_t n = values.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(values[i] - values[j]) <= radius) {
                auto ri = find(i), rj = find(j);
                if (ri != rj)
                    parent[std::max(ri, rj)] = std::min(ri, rj);
            }

    std::vector<int> labels(n, -1);
    std::vector<int> root_label(n, -1);
    int next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto r = find(i);
        if (root_label[r] < 0)
            root_label[r] = next++;
        labels[i] = root_label[r];
    }
    return labels;
}

std::vector<EigenCluster> eig(const Matrix& m, const Tolerance& tol)
{
    require_square_finite(m, "eig input");
    Eigen::ComplexEigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NonConvergence("complex eigensolver did not converge");

    std::vector<Complex> raw(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + solver.eigenvalues().size());
    auto labels = single_linkage(raw, tol.eps_eig);
    const int count = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;

    std::vector<EigenCluster> out(count);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        out[labels[i]].value += raw[i];
        out[labels[i]].multiplicity += 1;
    }
    for (auto& c : out)
        c.value /= static_cast<double>(c.multiplicity);

    std::sort(out.begin(), out.end(), [](const EigenCluster& a, const EigenCluster& b) {
        if (a.value.real() != b.value.real())
            return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return out;
}

Eigen::VectorXd singular_values(const Matrix& m)
{
    if (m.size() == 0)
        return {};
    return Eigen::JacobiSVD<Matrix>(m).singularValues();
}

int rank(const Matrix& m, const Tolerance& tol)
{
    if (m.size() == 0)
        return 0;
    const Eigen::VectorXd sv = singular_values(m);
    const double thr = rank_threshold(sv, tol);
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > thr)
            ++r;
    return r;
}

Matrix null_space(const Matrix& m, const Tolerance& tol)
{
    const Eigen::Index cols = m.cols();
    if (cols == 0)
        return Matrix(0, 0);
    if (m.rows() == 0)
        return identity(static_cast<int>(cols));

    Matrix padded = m;
    if (m.rows() < cols) {
        padded = Matrix::Zero(cols, cols);
        padded.topRows(m.rows()) = m;
    }
    auto svd = svd_full_v(padded);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double thr = rank_threshold(sv, tol);
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > thr)
        ++r;
    return svd.matrixV().rightCols(cols - r);
}

Matrix range_basis(const Matrix& m, const Tolerance& tol)
{
    if (m.size() == 0)
        return Matrix(m.rows(), 0);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double thr = rank_threshold(sv, tol);
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > thr)
        ++r;
    return svd.matrixU().leftCols(r);
}

double op_norm(const Matrix& m)
{
    if (m.size() == 0)
        return 0.0;
    return singular_values(m)(0);
}

double hs_norm(const Matrix& m) { return m.norm(); }

Complex hs_inner(const Matrix& a, const Matrix& b)
{
    return (a.array().conjugate() * b.array()).sum();
}

double condition_number(const Matrix& m)
{
    const Eigen::VectorXd sv = singular_values(m);
    if (sv.size() == 0)
        return 0.0;
    const double lo = sv(sv.size() - 1);
    if (lo == 0.0)
        return std::numeric_limits<double>::infinity();
    return sv(0) / lo;
}

Matrix adjoint(const Matrix& m) { return m.adjoint(); }

Matrix identity(int n) { return Matrix::Identity(n, n); }

bool is_finite(const Matrix& m)
{
    return m.array().real().allFinite() && m.array().imag().allFinite();
}

void require_square_finite(const Matrix& m, const std::string& what)
{
    if (m.rows() < 1 || m.rows() != m.cols())
        throw InputError(what + ": matrix must be square with dim >= 1");
    if (!is_finite(m))
        throw InputError(what + ": matrix entries must be finite");
}

Matrix projector(const Matrix& basis, const Tolerance& tol)
{
    const Matrix q = range_basis(basis, tol);
    return q * q.adjoint();
}

Matrix projection_meet(const Matrix& p, const Matrix& q, const Tolerance& tol)
{
    // x lies in both ranges iff (I-p)x = 0 and (I-q)x = 0.
    const Eigen::Index n = p.rows();
    Matrix stacked(2 * n, n);
    stacked.topRows(n) = Matrix::Identity(n, n) - p;
    stacked.bottomRows(n) = Matrix::Identity(n, n) - q;
    const Matrix k = null_space(stacked, tol);
    return k * k.adjoint();
}

Matrix projection_join(const Matrix& p, const Matrix& q, const Tolerance& tol)
{
    Matrix both(p.rows(), p.cols() + q.cols());
    both << p, q;
    return projector(both, tol);
}

Vector vec(const Matrix& m)
{
    return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix random_complex(int rows, int cols, Rng& rng)
{
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            m(i, j) = Complex(re, im);
        }
    return m;
}

Matrix random_unitary(int n, Rng& rng)
{
    const Matrix g = random_complex(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phases so the distribution is Haar.
    for (int j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0.0)
            q.col(j) *= d / std::abs(d);
    }
    return q;
}

Matrix random_hermitian(int n, Rng& rng)
{
    const Matrix g = random_complex(n, n, rng);
    return 0.5 * (g + g.adjoint());
}

} // namespace ncdual
