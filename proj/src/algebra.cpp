#include "ncdual/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ncdual/errors.hpp"
#include "ncdual/kernels.hpp"

namespace ncdual {

namespace {

constexpr int kMaxRandomAttempts = 32;

/// Incremental Hilbert-Schmidt Gram-Schmidt.
class HsBasis {
public:
    explicit HsBasis(double rel_tol) : rel_tol_(rel_tol) {}

    bool add(const Matrix& candidate)
    {
        const double scale = std::max(1.0, candidate.norm());
        Matrix r = candidate;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : elems_)
                r -= hs_inner(b, r) * b;
        const double rn = r.norm();
        if (rn <= rel_tol_ * scale)
            return false;
        elems_.push_back(r / rn);
        return true;
    }

    const std::vector<Matrix>& elems() const { return elems_; }
    std::size_t size() const { return elems_.size(); }

private:
    double rel_tol_;
    std::vector<Matrix> elems_;
};

std::vector<Matrix> commutation_set(const FiniteCStar& a)
{
    std::vector<Matrix> out;
    if (a.generators.empty())
        return a.basis;
    for (const auto& g : a.generators) {
        out.push_back(g);
        out.push_back(g.adjoint());
    }
    return out;
}

/// Orthonormal HS combinations of `basis` that commute with every element of `with`.
std::vector<Matrix> commutant_within(const std::vector<Matrix>& basis, const std::vector<Matrix>& with,
                                     const Tolerance& tol)
{
    const std::size_t d = basis.size();
    if (d == 0)
        return {};
    const Eigen::Index n2 = basis.front().size();
    Matrix system(static_cast<Eigen::Index>(with.size()) * n2, static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t g = 0; g < with.size(); ++g) {
            const Matrix comm = basis[i] * with[g] - with[g] * basis[i];
            system.block(static_cast<Eigen::Index>(g) * n2, static_cast<Eigen::Index>(i), n2, 1) = vec(comm);
        }
    const Matrix kernel = null_space(system, tol);
    std::vector<Matrix> out;
    for (Eigen::Index k = 0; k < kernel.cols(); ++k) {
        Matrix z = Matrix::Zero(basis.front().rows(), basis.front().cols());
        for (std::size_t i = 0; i < d; ++i)
            z += kernel(static_cast<Eigen::Index>(i), k) * basis[i];
        out.push_back(std::move(z));
    }
    return out;
}

struct EigenGroups {
    std::vector<double> values;
    std::vector<Matrix> spaces; // orthonormal columns
};

EigenGroups hermitian_groups(const Matrix& h, double radius)
{
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success)
        throw NonConvergence("hermitian eigensolver did not converge");
    const Eigen::VectorXd& ev = es.eigenvalues();
    std::vector<Complex> vals(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        vals[i] = ev(i);
    const auto labels = single_linkage(vals, radius);
    const int k = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    EigenGroups g;
    g.values.assign(k, 0.0);
    g.spaces.assign(k, Matrix(h.rows(), 0));
    std::vector<int> counts(k, 0);
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        const int l = labels[i];
        g.values[l] += ev(i);
        counts[l] += 1;
        Matrix& s = g.spaces[l];
        s.conservativeResize(Eigen::NoChange, s.cols() + 1);
        s.col(s.cols() - 1) = es.eigenvectors().col(i);
    }
    for (int l = 0; l < k; ++l)
        g.values[l] /= counts[l];
    return g;
}

double min_gap(const std::vector<double>& v)
{
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            gap = std::min(gap, std::abs(v[i] - v[j]));
    return gap;
}

Matrix random_real_combination(const std::vector<Matrix>& elems, Rng& rng)
{
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    Matrix h = Matrix::Zero(elems.front().rows(), elems.front().cols());
    // Both Hermitian parts: the span of e + e* alone can miss directions (e.g.
    // the two complex characters of Z3).
    const Complex i(0.0, 1.0);
    for (const auto& e : elems) {
        h += coef(rng) * (e + e.adjoint());
        h += coef(rng) * i * (e - e.adjoint());
    }
    return 0.5 * (h + h.adjoint());
}

std::vector<Matrix> central_projections(const FiniteCStar& a, Rng& rng)
{
    const int c = static_cast<int>(a.center_basis.size());
    const int n = a.ambient_dim;
    if (c == 1)
        return {identity(n)};
    for (int attempt = 0; attempt < kMaxRandomAttempts; ++attempt) {
        const Matrix h = random_real_combination(a.center_basis, rng);
        const double scale = std::max(1.0, op_norm(h));
        const auto groups = hermitian_groups(h, 1e-6 * scale);
        if (static_cast<int>(groups.values.size()) != c || min_gap(groups.values) < 1e-3 * scale)
            continue;
        std::vector<Matrix> out;
        for (const auto& s : groups.spaces)
            out.push_back(s * s.adjoint());
        return out;
    }
    throw NonConvergence("could not separate the minimal central projections");
}

Block build_block(const FiniteCStar& a, const Matrix& pc, const Tolerance& tol, Rng& rng)
{
    const int n = a.ambient_dim;
    std::vector<Matrix> cut;
    Matrix stacked(static_cast<Eigen::Index>(n) * n, a.dimension());
    for (int i = 0; i < a.dimension(); ++i) {
        cut.push_back(a.basis[i] * pc);
        stacked.col(i) = vec(cut.back());
    }
    const int dim_ac = rank(stacked, tol);
    const int nb = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dim_ac))));
    if (nb * nb != dim_ac)
        throw NonConvergence("central summand dimension is not a perfect square");

    Eigen::SelfAdjointEigenSolver<Matrix> pes(pc);
    Matrix range_pc(n, 0);
    for (int i = 0; i < n; ++i)
        if (pes.eigenvalues()(i) > 0.5) {
            range_pc.conservativeResize(Eigen::NoChange, range_pc.cols() + 1);
            range_pc.col(range_pc.cols() - 1) = pes.eigenvectors().col(i);
        }
    const int rank_pc = static_cast<int>(range_pc.cols());
    if (rank_pc % nb != 0)
        throw NonConvergence("central projection rank is not a multiple of the block size");
    const int mult = rank_pc / nb;

    Matrix xi;
    bool found = false;
    for (int attempt = 0; attempt < kMaxRandomAttempts && !found; ++attempt) {
        const Matrix x = random_real_combination(a.basis, rng);
        const Matrix y = range_pc.adjoint() * x * range_pc;
        const double scale = std::max(1.0, op_norm(y));
        const auto groups = hermitian_groups(0.5 * (y + y.adjoint()), 1e-6 * scale);
        if (static_cast<int>(groups.values.size()) != nb || min_gap(groups.values) < 1e-3 * scale)
            continue;
        bool sizes_ok = true;
        for (const auto& s : groups.spaces)
            sizes_ok = sizes_ok && s.cols() == mult;
        if (!sizes_ok)
            continue;
        // Lowest eigenvalue group: a minimal projection of A pc.
        const auto lowest = std::min_element(groups.values.begin(), groups.values.end()) - groups.values.begin();
        const Matrix e = range_pc * groups.spaces[lowest] * groups.spaces[lowest].adjoint() * range_pc.adjoint();
        Eigen::Index best = 0;
        e.colwise().norm().maxCoeff(&best);
        xi = e.col(best) / e.col(best).norm();
        found = true;
    }
    if (!found)
        throw NonConvergence("could not isolate a minimal projection in a central summand");

    Matrix orbit(n, a.dimension());
    for (int i = 0; i < a.dimension(); ++i)
        orbit.col(i) = a.basis[i] * xi;
    // Gram-Schmidt in basis order keeps the block frame deterministic.
    Matrix w(n, 0);
    for (int i = 0; i < a.dimension() && w.cols() < nb; ++i) {
        Vector v = orbit.col(i);
        for (int pass = 0; pass < 2; ++pass)
            v -= w * (w.adjoint() * v);
        if (v.norm() > 1e-6 * std::max(1.0, orbit.col(i).norm())) {
            w.conservativeResize(Eigen::NoChange, w.cols() + 1);
            w.col(w.cols() - 1) = v / v.norm();
        }
    }
    if (w.cols() != nb)
        throw NonConvergence("cyclic subspace of a minimal projection has the wrong dimension");

    Block b;
    b.block_dim = nb;
    b.multiplicity = mult;
    b.isometry = w;
    b.central_projection = pc;
    return b;
}

int first_support_index(const Matrix& p)
{
    for (Eigen::Index i = 0; i < p.rows(); ++i)
        if (p(i, i).real() > 1e-8)
            return static_cast<int>(i);
    return static_cast<int>(p.rows());
}

} // namespace

Vector FiniteCStar::coefficients(const Matrix& x) const
{
    Vector c(dimension());
    for (int i = 0; i < dimension(); ++i)
        c(i) = hs_inner(basis[i], x);
    return c;
}

Matrix FiniteCStar::element(const Vector& c) const
{
    Matrix x = Matrix::Zero(ambient_dim, ambient_dim);
    for (int i = 0; i < dimension(); ++i)
        x += c(i) * basis[i];
    return x;
}

double FiniteCStar::membership_residual(const Matrix& x) const
{
    const Matrix p = element(coefficients(x));
    return (x - p).norm() / std::max(1.0, x.norm());
}

Matrix FiniteCStar::block_matrix(std::size_t c, const Matrix& x) const
{
    const Matrix& w = blocks.at(c).isometry;
    return w.adjoint() * x * w;
}

int FiniteCStar::skeleton_size() const
{
    int s = 0;
    for (const auto& b : blocks)
        s += b.block_dim;
    return s;
}

int QuantumSpace::num_classes() const
{
    return class_of.empty() ? 0 : *std::max_element(class_of.begin(), class_of.end()) + 1;
}

std::vector<std::vector<int>> QuantumSpace::classes() const
{
    std::vector<std::vector<int>> out(num_classes());
    for (std::size_t i = 0; i < class_of.size(); ++i)
        out[class_of[i]].push_back(static_cast<int>(i));
    return out;
}

void QuantumSpace::validate() const
{
    if (points.size() != class_of.size())
        throw InputError("quantum space: one class index per point required");
    for (int c : class_of)
        if (c < 0)
            throw InputError("quantum space: negative class index");
    for (const auto& cls : classes())
        if (cls.empty())
            throw InputError("quantum space: empty class");
}

FiniteCStar generate(int ambient_dim, std::span<const Matrix> generators, const Tolerance& tol,
                     std::uint64_t seed)
{
    if (ambient_dim < 1)
        throw DimensionMismatch("ambient dimension must be positive");
    for (const auto& g : generators)
        if (g.rows() != ambient_dim || g.cols() != ambient_dim)
            throw DimensionMismatch("generator of size " + std::to_string(g.rows()) + "x" +
                                    std::to_string(g.cols()) + " in ambient dimension " +
                                    std::to_string(ambient_dim));

    FiniteCStar a;
    a.ambient_dim = ambient_dim;
    a.generators.assign(generators.begin(), generators.end());

    const std::size_t cap = static_cast<std::size_t>(ambient_dim) * ambient_dim;
    HsBasis basis(tol.eps_rank);
    basis.add(identity(ambient_dim));
    for (const auto& g : generators) {
        basis.add(g);
        basis.add(g.adjoint());
    }
    while (basis.size() < cap) {
        const std::size_t before = basis.size();
        const auto products = kernels::pairwise_products_omp(basis.elems());
        for (const auto& p : products)
            if (basis.add(p) && basis.size() >= cap)
                break;
        if (basis.size() == before)
            break;
    }
    a.basis = basis.elems();

    a.center_basis = commutant_within(a.basis, commutation_set(a), tol);

    Rng rng(seed);
    const auto projections = central_projections(a, rng);
    for (const auto& pc : projections)
        a.blocks.push_back(build_block(a, pc, tol, rng));
    std::stable_sort(a.blocks.begin(), a.blocks.end(), [](const Block& x, const Block& y) {
        const int fx = first_support_index(x.central_projection);
        const int fy = first_support_index(y.central_projection);
        if (fx != fy)
            return fx < fy;
        return x.block_dim < y.block_dim;
    });

    int sum_sq = 0;
    for (const auto& b : a.blocks)
        sum_sq += b.block_dim * b.block_dim;
    if (sum_sq != a.dimension())
        throw NonConvergence("block dimensions do not account for the algebra dimension");
    return a;
}

CenterResult center(const FiniteCStar& a, const Tolerance& tol)
{
    CenterResult r;
    r.basis = commutant_within(a.basis, commutation_set(a), tol);
    r.dimension = static_cast<int>(r.basis.size());
    return r;
}

bool is_commutative(const FiniteCStar& a, const Tolerance& tol)
{
    const auto products = kernels::pairwise_products_omp(a.basis);
    const std::size_t d = a.basis.size();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            if ((products[i * d + j] - products[j * d + i]).norm() > tol.eps_verify)
                return false;
    return true;
}

double span_distance(std::span<const Matrix> a, std::span<const Matrix> b)
{
    if (a.size() != b.size())
        return std::numeric_limits<double>::infinity();
    auto residual = [](std::span<const Matrix> from, std::span<const Matrix> onto) {
        // onto need not be orthonormal: project with a least-squares fit.
        if (from.empty())
            return 0.0;
        const Eigen::Index n2 = from.front().size();
        Matrix ob(n2, static_cast<Eigen::Index>(onto.size()));
        for (std::size_t j = 0; j < onto.size(); ++j)
            ob.col(static_cast<Eigen::Index>(j)) = vec(onto[j]);
        const auto qr = ob.colPivHouseholderQr();
        double worst = 0.0;
        for (const auto& x : from) {
            const Vector v = vec(x);
            const Vector fit = ob * qr.solve(v);
            worst = std::max(worst, (v - fit).norm() / std::max(1.0, v.norm()));
        }
        return worst;
    };
    return std::max(residual(a, b), residual(b, a));
}

} // namespace ncdual
