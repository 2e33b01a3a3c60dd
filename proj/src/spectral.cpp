#include "ncdual/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "ncdual/errors.hpp"

namespace ncdual {

namespace {

// Chains whose change of basis is worse than this are rejected.
constexpr double kChainConditionBound = 1e12;

bool complex_less(Complex a, Complex b)
{
    if (a.real() != b.real())
        return a.real() < b.real();
    return a.imag() < b.imag();
}

// Reorders adjacent diagonal entries k, k+1 of the Schur form.
void swap_schur(Matrix& t, Matrix& q, int k)
{
    const Complex a = t(k, k), b = t(k + 1, k + 1), c = t(k, k + 1);
    const Complex d = b - a;
    const double r = std::hypot(std::abs(c), std::abs(d));
    if (r == 0.0)
        return;
    Eigen::Matrix2cd g;
    g << c / r, -std::conj(d) / r, d / r, std::conj(c) / r;
    t.middleCols(k, 2) = t.middleCols(k, 2) * g;
    t.middleRows(k, 2) = g.adjoint() * t.middleRows(k, 2);
    q.middleCols(k, 2) = q.middleCols(k, 2) * g;
    t(k + 1, k) = 0.0;
}

// Solves a x - x b = c for upper-triangular a, b with disjoint diagonals.
Matrix triangular_sylvester(const Matrix& a, const Matrix& b, const Matrix& c)
{
    const Eigen::Index p = a.rows(), q = b.rows();
    Matrix x(p, q);
    for (Eigen::Index col = 0; col < q; ++col) {
        Vector rhs = c.col(col);
        for (Eigen::Index m = 0; m < col; ++m)
            rhs += x.col(m) * b(m, col);
        Matrix shifted = a - b(col, col) * Matrix::Identity(p, p);
        x.col(col) = shifted.triangularView<Eigen::Upper>().solve(rhs);
    }
    return x;
}

struct ClusterChains {
    Matrix chains;               // m x m, chain columns bottom-first
    std::vector<int> sizes;      // block sizes in column order
};

// Jordan chains of a nilpotent n (up to eps_rank). Empty optional when the
// kernel sequence is inconsistent or n is not nilpotent.
std::optional<ClusterChains> nilpotent_chains(const Matrix& n, const Tolerance& tol)
{
    const int m = static_cast<int>(n.rows());
    std::vector<Matrix> kernels{Matrix(m, 0)};
    std::vector<int> dims{0};
    Matrix power = Matrix::Identity(m, m);
    while (dims.back() < m) {
        if (static_cast<int>(dims.size()) > m)
            return std::nullopt;
        power = n * power;
        kernels.push_back(null_space(power, tol));
        const int d = static_cast<int>(kernels.back().cols());
        if (d <= dims.back())
            return std::nullopt;
        dims.push_back(d);
    }
    const int p = static_cast<int>(dims.size()) - 1;

    // at_least[j]: number of blocks of size >= j.
    std::vector<int> at_least(p + 2, 0);
    for (int j = 1; j <= p; ++j)
        at_least[j] = dims[j] - dims[j - 1];
    for (int j = 1; j < p; ++j)
        if (at_least[j] < at_least[j + 1])
            return std::nullopt;

    struct Top {
        Vector x;
        int length;
    };
    std::vector<Top> tops;
    for (int j = p; j >= 1; --j) {
        const int fresh = at_least[j] - at_least[j + 1];
        if (fresh == 0)
            continue;
        Matrix w(m, kernels[j - 1].cols() + static_cast<Eigen::Index>(tops.size()));
        w.leftCols(kernels[j - 1].cols()) = kernels[j - 1];
        for (std::size_t t = 0; t < tops.size(); ++t) {
            Vector v = tops[t].x;
            for (int s = 0; s < tops[t].length - j; ++s)
                v = n * v;
            w.col(kernels[j - 1].cols() + static_cast<Eigen::Index>(t)) = v;
        }
        const Matrix wq = range_basis(w, tol);
        const Matrix rest = kernels[j] - wq * (wq.adjoint() * kernels[j]);
        const Matrix comp = range_basis(rest, tol);
        if (comp.cols() < fresh)
            return std::nullopt;
        for (int f = 0; f < fresh; ++f)
            tops.push_back({comp.col(f), j});
    }

    ClusterChains out;
    out.chains.resize(m, m);
    int col = 0;
    for (const auto& top : tops) {
        std::vector<Vector> chain(top.length);
        chain[top.length - 1] = top.x;
        for (int i = top.length - 1; i > 0; --i)
            chain[i - 1] = n * chain[i];
        for (int i = 0; i < top.length; ++i)
            out.chains.col(col++) = chain[i];
        out.sizes.push_back(top.length);
    }
    if (col != m)
        return std::nullopt;
    return out;
}

enum class Attempt { ok, under_merged, failed };

struct AttemptResult {
    Attempt status = Attempt::failed;
    JordanDecomposition dec;
};

AttemptResult try_clustering(const Matrix& a, Matrix t, Matrix q, std::vector<int> labels, const Tolerance& tol)
{
    AttemptResult res;
    const int n = static_cast<int>(t.rows());
    const int k = *std::max_element(labels.begin(), labels.end()) + 1;

    std::vector<Complex> mean(k, 0.0);
    std::vector<int> count(k, 0);
    for (int i = 0; i < n; ++i) {
        mean[labels[i]] += t(i, i);
        ++count[labels[i]];
    }
    for (int c = 0; c < k; ++c)
        mean[c] /= static_cast<double>(count[c]);
    std::vector<int> order(k);
    for (int c = 0; c < k; ++c)
        order[c] = c;
    std::sort(order.begin(), order.end(), [&](int x, int y) { return complex_less(mean[x], mean[y]); });
    std::vector<int> rank_of(k);
    for (int r = 0; r < k; ++r)
        rank_of[order[r]] = r;

    // Bubble the diagonal into cluster order.
    for (bool moved = true; moved;) {
        moved = false;
        for (int i = 0; i + 1 < n; ++i)
            if (rank_of[labels[i]] > rank_of[labels[i + 1]]) {
                swap_schur(t, q, i);
                std::swap(labels[i], labels[i + 1]);
                moved = true;
            }
    }
    std::vector<int> start(k + 1, 0);
    for (int r = 0; r < k; ++r)
        start[r + 1] = start[r] + count[order[r]];

    // Block-diagonalize: t y = y diag(t_rr).
    Matrix y = Matrix::Identity(n, n);
    for (int j = 1; j < k; ++j) {
        const int sj = start[j], mj = start[j + 1] - sj;
        for (int i = j - 1; i >= 0; --i) {
            const int si = start[i], mi = start[i + 1] - si;
            Matrix rhs = -t.block(si, sj, mi, mj);
            for (int l = i + 1; l < j; ++l)
                rhs -= t.block(si, start[l], mi, start[l + 1] - start[l]) * y.block(start[l], sj, start[l + 1] - start[l], mj);
            y.block(si, sj, mi, mj) = triangular_sylvester(t.block(si, si, mi, mi), t.block(sj, sj, mj, mj), rhs);
        }
    }
    const Matrix yinv = y.triangularView<Eigen::Upper>().solve(Matrix::Identity(n, n));
    if (!is_finite(y) || !is_finite(yinv))
        return res;

    // Clusters that sit within rounding distance of a defective matrix are
    // pieces of one perturbed Jordan block and must be merged.
    const double anorm = std::max(1.0, a.norm());
    double pmax = 1.0;
    for (int r = 0; r < k; ++r) {
        const int s = start[r], m = start[r + 1] - s;
        const double pn = op_norm(y.middleCols(s, m) * yinv.middleRows(s, m));
        pmax = std::max(pmax, pn);
        if (k == 1)
            continue;
        double sep = std::numeric_limits<double>::infinity();
        for (int i = s; i < s + m; ++i)
            for (int j = 0; j < n; ++j)
                if (j < s || j >= s + m)
                    sep = std::min(sep, std::abs(t(i, i) - t(j, j)));
        if (sep <= tol.eps_rank * anorm * pn) {
            res.status = Attempt::under_merged;
            return res;
        }
    }

    Matrix chains = Matrix::Zero(n, n);
    JordanDecomposition& dec = res.dec;
    for (int r = 0; r < k; ++r) {
        const int s = start[r], m = start[r + 1] - s;
        const Complex lam = t.block(s, s, m, m).diagonal().mean();
        const Matrix nil = t.block(s, s, m, m) - lam * Matrix::Identity(m, m);
        const auto cc = nilpotent_chains(nil, tol);
        if (!cc)
            return res;
        if (condition_number(cc->chains) > kChainConditionBound)
            return res;
        chains.block(s, s, m, m) = cc->chains;
        int pos = s;
        for (int sz : cc->sizes) {
            dec.blocks.push_back({lam, sz, pos});
            pos += sz;
        }
    }

    Matrix chains_inv = Matrix::Zero(n, n);
    for (int r = 0; r < k; ++r) {
        const int s = start[r], m = start[r + 1] - s;
        chains_inv.block(s, s, m, m) = chains.block(s, s, m, m).fullPivLu().inverse();
    }
    dec.source = a;
    dec.basis_change = q * y * chains;
    dec.basis_change_inverse = chains_inv * yinv * q.adjoint();
    dec.projector_norm = pmax;
    dec.residual = (a - dec.basis_change * dec.jordan_matrix() * dec.basis_change_inverse).norm();
    if (!std::isfinite(dec.residual))
        return res;
    res.status = Attempt::ok;
    return res;
}

Matrix chain_columns(const JordanDecomposition& d, const std::vector<int>& blocks)
{
    int cols = 0;
    for (int b : blocks)
        cols += d.blocks[b].size;
    Matrix out(d.dim(), cols);
    int c = 0;
    for (int b : blocks) {
        out.middleCols(c, d.blocks[b].size) = d.basis_change.middleCols(d.blocks[b].position, d.blocks[b].size);
        c += d.blocks[b].size;
    }
    return out;
}

} // namespace

Matrix JordanDecomposition::jordan_matrix() const
{
    const int n = dim();
    Matrix j = Matrix::Zero(n, n);
    for (const auto& b : blocks)
        for (int i = 0; i < b.size; ++i) {
            j(b.position + i, b.position + i) = b.eigenvalue;
            if (i > 0)
                j(b.position + i - 1, b.position + i) = 1.0;
        }
    return j;
}

std::vector<int> JordanDecomposition::sorted_sizes() const
{
    std::vector<int> s;
    for (const auto& b : blocks)
        s.push_back(b.size);
    std::sort(s.rbegin(), s.rend());
    return s;
}

JordanDecomposition jordan(const Matrix& a, const Tolerance& tol)
{
    require_square_finite(a, "matrix");
    const int n = static_cast<int>(a.rows());
    Eigen::ComplexSchur<Matrix> schur(a);
    if (schur.info() != Eigen::Success)
        throw NonConvergence("Schur decomposition did not converge");
    const Matrix t = schur.matrixT();
    const Matrix q = schur.matrixU();

    std::vector<Complex> diag(n);
    for (int i = 0; i < n; ++i)
        diag[i] = t(i, i);
    std::vector<double> radii{tol.eps_eig};
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double d = std::abs(diag[i] - diag[j]);
            if (d > tol.eps_eig)
                radii.push_back(d);
        }
    std::sort(radii.begin(), radii.end());

    std::vector<int> previous;
    for (double r : radii) {
        std::vector<int> labels = single_linkage(diag, r);
        if (labels == previous)
            continue;
        previous = labels;
        AttemptResult att = try_clustering(a, t, q, labels, tol);
        if (att.status == Attempt::ok)
            return std::move(att.dec);
        if (att.status == Attempt::failed)
            break;
    }
    throw IllConditioned("no eigenvalue clustering yields a consistent Jordan structure; "
                         "eigenvalues are too close for the tolerance");
}

std::vector<int> SpectralFamily::selected_blocks(const SubRel& u) const
{
    const auto& labels = u.labels();
    std::vector<int> out;
    for (std::size_t b = 0; b < decomposition.blocks.size(); ++b) {
        const auto& blk = decomposition.blocks[b];
        const int l = labels[blk.position];
        bool whole = l >= 0;
        for (int i = 0; i < blk.size; ++i)
            if (labels[blk.position + i] != l)
                whole = false;
        if (l < 0) {
            for (int i = 0; i < blk.size; ++i)
                if (labels[blk.position + i] >= 0)
                    throw InputError("sub-relation " + u.to_string() + " is not a union of Jordan blocks");
            continue;
        }
        if (!whole)
            throw InputError("sub-relation " + u.to_string() + " is not a union of Jordan blocks");
        out.push_back(static_cast<int>(b));
    }
    return out;
}

Matrix SpectralFamily::block_idempotent(int b) const
{
    const auto& blk = decomposition.blocks.at(b);
    return decomposition.basis_change.middleCols(blk.position, blk.size) *
           decomposition.basis_change_inverse.middleRows(blk.position, blk.size);
}

Matrix SpectralFamily::oblique(const SubRel& u) const
{
    const int n = decomposition.dim();
    Matrix out = Matrix::Zero(n, n);
    for (int b : selected_blocks(u))
        out += block_idempotent(b);
    return out;
}

Matrix SpectralFamily::orthogonal(const SubRel& u) const
{
    const auto sel = selected_blocks(u);
    const int n = decomposition.dim();
    if (sel.empty())
        return Matrix::Zero(n, n);
    const Matrix cols = chain_columns(decomposition, sel);
    // The chain columns are independent, so a QR basis spans exactly their range.
    Eigen::HouseholderQR<Matrix> qr(cols);
    const Matrix basis = qr.householderQ() * Matrix::Identity(n, cols.cols());
    return basis * basis.adjoint();
}

ElementaryMeasure SpectralFamily::oblique_measure() const
{
    ElementaryMeasure e{relation, lattice, {}, ElementaryMeasure::Flavor::oblique, decomposition.dim()};
    for (const auto& u : lattice)
        e.values.push_back(oblique(u));
    return e;
}

ElementaryMeasure SpectralFamily::orthogonal_measure() const
{
    ElementaryMeasure e{relation, lattice, {}, ElementaryMeasure::Flavor::orthogonal, decomposition.dim()};
    for (const auto& u : lattice)
        e.values.push_back(orthogonal(u));
    return e;
}

SpectralFamily spectral_family(const Matrix& a, const Tolerance& tol)
{
    SpectralFamily f;
    f.decomposition = jordan(a, tol);
    const auto& d = f.decomposition;
    const int n = d.dim();
    const int nb = static_cast<int>(d.blocks.size());

    std::vector<std::string> labels(n);
    std::vector<int> cls(n);
    for (int b = 0; b < nb; ++b)
        for (int i = 0; i < d.blocks[b].size; ++i) {
            labels[d.blocks[b].position + i] = "y" + std::to_string(b) + "." + std::to_string(i);
            cls[d.blocks[b].position + i] = b;
        }
    f.relation = std::make_shared<const FinEquivRel>(labels, cls);

    for (int b = 0; b < nb; ++b) {
        std::vector<int> l(n, -1);
        for (int i = 0; i < d.blocks[b].size; ++i)
            l[d.blocks[b].position + i] = 0;
        f.minimal_blocks.emplace_back(f.relation, std::move(l));
    }
    // Unions of minimal blocks form the Boolean lattice they generate.
    if (nb <= 16) {
        for (std::uint32_t mask = 0; mask < (1u << nb); ++mask) {
            std::vector<int> l(n, -1);
            for (int b = 0; b < nb; ++b)
                if (mask & (1u << b))
                    for (int i = 0; i < d.blocks[b].size; ++i)
                        l[d.blocks[b].position + i] = b;
            f.lattice.emplace_back(f.relation, std::move(l));
        }
        std::sort(f.lattice.begin(), f.lattice.end());
    }

    for (int b = 0; b < nb; ++b) {
        const auto& blk = d.blocks[b];
        Matrix s = Matrix::Zero(n, n);
        for (int i = 1; i < blk.size; ++i)
            s += d.basis_change.col(blk.position + i - 1) * d.basis_change_inverse.row(blk.position + i);
        f.shifts.push_back(std::move(s));
    }
    return f;
}

Matrix reconstruct(const SpectralFamily& f)
{
    const int n = f.decomposition.dim();
    Matrix out = Matrix::Zero(n, n);
    for (std::size_t b = 0; b < f.decomposition.blocks.size(); ++b) {
        const Matrix q = f.block_idempotent(static_cast<int>(b));
        out += f.decomposition.blocks[b].eigenvalue * q + f.shifts[b] * q;
    }
    return out;
}

RelFunction RelFunction::zero(const SpectralFamily& f)
{
    RelFunction mu;
    for (const auto& b : f.decomposition.blocks)
        mu.coefficients.emplace_back(b.size, Complex(0.0));
    return mu;
}

RelFunction RelFunction::unit(const SpectralFamily& f)
{
    RelFunction mu = zero(f);
    for (auto& c : mu.coefficients)
        c[0] = 1.0;
    return mu;
}

RelFunction RelFunction::z(const SpectralFamily& f)
{
    RelFunction mu = zero(f);
    for (std::size_t b = 0; b < mu.coefficients.size(); ++b) {
        mu.coefficients[b][0] = f.decomposition.blocks[b].eigenvalue;
        if (mu.coefficients[b].size() > 1)
            mu.coefficients[b][1] = 1.0;
    }
    return mu;
}

RelFunction convolve(const RelFunction& mu, const RelFunction& nu)
{
    if (mu.coefficients.size() != nu.coefficients.size())
        throw DimensionMismatch("relational functions on different block structures");
    RelFunction out;
    for (std::size_t b = 0; b < mu.coefficients.size(); ++b) {
        const auto& x = mu.coefficients[b];
        const auto& y = nu.coefficients[b];
        if (x.size() != y.size())
            throw DimensionMismatch("relational functions on different block structures");
        std::vector<Complex> c(x.size(), 0.0);
        for (std::size_t d = 0; d < x.size(); ++d)
            for (std::size_t d1 = 0; d1 <= d; ++d1)
                c[d] += x[d1] * y[d - d1];
        out.coefficients.push_back(std::move(c));
    }
    return out;
}

Matrix apply_measure(const RelFunction& mu, const SpectralFamily& f)
{
    const auto& blocks = f.decomposition.blocks;
    if (mu.coefficients.size() != blocks.size())
        throw DimensionMismatch("relational function has " + std::to_string(mu.coefficients.size()) +
                                " blocks; the family has " + std::to_string(blocks.size()));
    const int n = f.decomposition.dim();
    Matrix out = Matrix::Zero(n, n);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (static_cast<int>(mu.coefficients[b].size()) != blocks[b].size)
            throw DimensionMismatch("coefficient count differs from block size");
        Matrix term = f.block_idempotent(static_cast<int>(b));
        for (int d = 0; d < blocks[b].size; ++d) {
            out += mu.coefficients[b][d] * term;
            term = f.shifts[b] * term;
        }
    }
    return out;
}

RelFunction holomorphic(const AnalyticFunction& fn, const SpectralFamily& f)
{
    RelFunction mu;
    for (const auto& b : f.decomposition.blocks)
        mu.coefficients.push_back(fn.taylor(b.eigenvalue, b.size));
    return mu;
}

std::vector<Circle> default_contours(const SpectralFamily& f)
{
    std::vector<Complex> centers;
    for (const auto& b : f.decomposition.blocks)
        if (std::find(centers.begin(), centers.end(), b.eigenvalue) == centers.end())
            centers.push_back(b.eigenvalue);
    std::vector<Circle> out;
    for (const auto& c : centers) {
        double sep = std::numeric_limits<double>::infinity();
        for (const auto& o : centers)
            if (o != c)
                sep = std::min(sep, std::abs(o - c));
        out.push_back({c, std::isfinite(sep) ? 0.5 * sep : 1.0});
    }
    return out;
}

Matrix riesz(const AnalyticFunction& fn, const Matrix& a, const std::vector<Circle>& contours, const Tolerance& tol,
             int nodes)
{
    require_square_finite(a, "matrix");
    const int n = static_cast<int>(a.rows());
    Eigen::ComplexEigenSolver<Matrix> es(a, false);
    if (es.info() != Eigen::Success)
        throw NonConvergence("eigenvalue solver did not converge");
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const Complex lam = es.eigenvalues()(i);
        int inside = 0;
        for (const auto& c : contours) {
            const double dist = std::abs(lam - c.center);
            if (std::abs(dist - c.radius) <= tol.eps_eig)
                throw ContourTooClose("contour around " + std::to_string(c.center.real()) + "+" +
                                      std::to_string(c.center.imag()) + "i passes within eps_eig of an eigenvalue");
            if (dist < c.radius)
                ++inside;
        }
        if (inside != 1)
            throw InputError("every eigenvalue must be enclosed by exactly one contour");
    }
    Matrix out = Matrix::Zero(n, n);
    const Matrix id = identity(n);
    for (const auto& c : contours)
        for (int k = 0; k < nodes; ++k) {
            const double theta = 2.0 * std::numbers::pi * k / nodes;
            const Complex w = c.radius * std::exp(Complex(0.0, theta));
            const Complex zeta = c.center + w;
            const Matrix res = (zeta * id - a).partialPivLu().solve(id);
            out += (fn(zeta) * w / static_cast<double>(nodes)) * res;
        }
    return out;
}

Matrix invariant_subspace(const Matrix& a, const Tolerance& tol)
{
    require_square_finite(a, "matrix");
    if (a.rows() < 2)
        throw InputError("invariant subspace needs dimension at least 2");
    const JordanDecomposition d = jordan(a, tol);
    const Vector v = d.basis_change.col(d.blocks.front().position);
    return v * v.adjoint() / v.squaredNorm();
}

} // namespace ncdual
