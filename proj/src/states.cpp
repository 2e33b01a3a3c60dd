#include "ncdual/states.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "ncdual/errors.hpp"
#include "ncdual/kernels.hpp"

namespace ncdual {

// ---------------------------------------------------------------- FinEquivRel

namespace {

std::vector<int> canonical_classes(const std::vector<int>& class_of)
{
    std::map<int, int> renumber;
    std::vector<int> out(class_of.size());
    for (std::size_t i = 0; i < class_of.size(); ++i) {
        auto it = renumber.find(class_of[i]);
        if (it == renumber.end())
            it = renumber.emplace(class_of[i], static_cast<int>(renumber.size())).first;
        out[i] = it->second;
    }
    return out;
}

} // namespace

FinEquivRel::FinEquivRel(std::vector<std::string> points, const std::vector<int>& class_of)
    : points_(std::move(points)), class_of_(canonical_classes(class_of))
{
    if (points_.size() != class_of_.size())
        throw InputError("relation: one class index per point required");
    num_classes_ = class_of_.empty() ? 0 : *std::max_element(class_of_.begin(), class_of_.end()) + 1;
}

FinEquivRel FinEquivRel::from_pairs(std::vector<std::string> points, const std::vector<PointPair>& pairs)
{
    const int n = static_cast<int>(points.size());
    std::vector<std::vector<char>> in(n, std::vector<char>(n, 0));
    for (auto [x, y] : pairs) {
        if (x < 0 || y < 0 || x >= n || y >= n)
            throw InputError("relation: pair refers to an unknown point");
        in[x][y] = 1;
    }
    for (int x = 0; x < n; ++x)
        if (!in[x][x])
            throw InputError("relation not reflexive at " + points[x]);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (in[x][y] && !in[y][x])
                throw InputError("relation not symmetric at (" + points[x] + ", " + points[y] + ")");
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (in[x][y])
                for (int z = 0; z < n; ++z)
                    if (in[y][z] && !in[x][z])
                        throw InputError("relation not transitive at (" + points[x] + ", " + points[y] + ", " +
                                         points[z] + ")");
    std::vector<int> cls(n, -1);
    int next = 0;
    for (int x = 0; x < n; ++x) {
        if (cls[x] >= 0)
            continue;
        for (int y = 0; y < n; ++y)
            if (in[x][y])
                cls[y] = next;
        ++next;
    }
    return FinEquivRel(std::move(points), cls);
}

FinEquivRel FinEquivRel::discrete(int n)
{
    std::vector<std::string> pts;
    std::vector<int> cls;
    for (int i = 0; i < n; ++i) {
        pts.push_back("p" + std::to_string(i));
        cls.push_back(i);
    }
    return FinEquivRel(std::move(pts), cls);
}

FinEquivRel FinEquivRel::with_class_sizes(const std::vector<int>& sizes)
{
    std::vector<std::string> pts;
    std::vector<int> cls;
    for (std::size_t c = 0; c < sizes.size(); ++c)
        for (int k = 0; k < sizes[c]; ++k) {
            cls.push_back(static_cast<int>(c));
            pts.push_back("p" + std::to_string(pts.size()));
        }
    return FinEquivRel(std::move(pts), cls);
}

std::vector<std::vector<int>> FinEquivRel::classes() const
{
    std::vector<std::vector<int>> out(num_classes_);
    for (int i = 0; i < size(); ++i)
        out[class_of_[i]].push_back(i);
    return out;
}

std::vector<int> FinEquivRel::class_sizes() const
{
    std::vector<int> s;
    for (const auto& c : classes())
        s.push_back(static_cast<int>(c.size()));
    std::sort(s.begin(), s.end());
    return s;
}

std::vector<PointPair> FinEquivRel::pairs() const
{
    std::vector<PointPair> out;
    for (int x = 0; x < size(); ++x)
        for (int y = 0; y < size(); ++y)
            if (contains(x, y))
                out.emplace_back(x, y);
    return out;
}

int FinEquivRel::index_of(const std::string& label) const
{
    const auto it = std::find(points_.begin(), points_.end(), label);
    if (it == points_.end())
        throw InputError("unknown point label '" + label + "'");
    return static_cast<int>(it - points_.begin());
}

namespace {

void partitions_rec(int i, int n, int used, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (i == n) {
        out.push_back(cur);
        return;
    }
    for (int c = 0; c <= used; ++c) {
        cur[i] = c;
        partitions_rec(i + 1, n, std::max(used, c + 1), cur, out);
    }
}

} // namespace

std::vector<std::vector<int>> all_partitions(int n)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur(n, 0);
    partitions_rec(0, n, 0, cur, out);
    return out;
}

// ---------------------------------------------------------------- states

Complex State::operator()(const Matrix& x) const
{
    const Vector c = algebra->coefficients(x);
    Complex s = 0.0;
    for (Eigen::Index i = 0; i < c.size(); ++i)
        s += c(i) * values[i];
    return s;
}

Matrix State::density() const
{
    Matrix d = Matrix::Zero(algebra->ambient_dim, algebra->ambient_dim);
    for (int i = 0; i < algebra->dimension(); ++i)
        d += values[i] * algebra->basis[i].adjoint();
    return d;
}

namespace {

/// gram(i, j) = s(b_i* b_j) = <b_i, b_j d>_HS.
Matrix gram_matrix(const State& s)
{
    const auto& basis = s.algebra->basis;
    const Matrix d = s.density();
    std::vector<Matrix> targets;
    targets.reserve(basis.size());
    for (const auto& b : basis)
        targets.push_back(b * d);
    return kernels::hs_coefficients_omp(basis, targets);
}

} // namespace

void State::validate(const Tolerance& tol) const
{
    if (static_cast<int>(values.size()) != algebra->dimension())
        throw DegenerateState("state needs one value per algebra basis element");
    const Complex one = (*this)(identity(algebra->ambient_dim));
    if (std::abs(one - 1.0) > tol.eps_verify)
        throw DegenerateState("state is not normalized: s(1) = " + std::to_string(one.real()) + " + " +
                              std::to_string(one.imag()) + "i");
    const Matrix g = gram_matrix(*this);
    if ((g - g.adjoint()).norm() > tol.eps_verify * std::max(1.0, g.norm()))
        throw DegenerateState("state is not hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (g + g.adjoint()), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().size() > 0 && es.eigenvalues()(0) < -tol.eps_verify)
        throw DegenerateState("state is not positive");
}

State vector_state(std::shared_ptr<const FiniteCStar> algebra, const Vector& v, std::string label)
{
    State s;
    s.values.reserve(algebra->basis.size());
    for (const auto& b : algebra->basis)
        s.values.push_back(v.dot(b * v));
    s.algebra = std::move(algebra);
    s.label = std::move(label);
    return s;
}

State mix(const std::vector<State>& states, const std::vector<double>& weights)
{
    if (states.empty() || states.size() != weights.size())
        throw InputError("mix: one weight per state required");
    State out;
    out.algebra = states.front().algebra;
    out.values.assign(states.front().values.size(), 0.0);
    for (std::size_t k = 0; k < states.size(); ++k) {
        if (states[k].algebra != out.algebra)
            throw DimensionMismatch("mix: states live on different algebras");
        for (std::size_t i = 0; i < out.values.size(); ++i)
            out.values[i] += weights[k] * states[k].values[i];
    }
    return out;
}

Matrix GnsRep::rep(const Matrix& x) const
{
    const Vector c = state.algebra->coefficients(x);
    Matrix r = Matrix::Zero(rep_dim, rep_dim);
    for (Eigen::Index i = 0; i < c.size(); ++i)
        r += c(i) * rep_map[i];
    return r;
}

std::vector<State> skeleton_states(std::shared_ptr<const FiniteCStar> a)
{
    std::vector<State> out;
    for (std::size_t c = 0; c < a->blocks.size(); ++c) {
        const Matrix& w = a->blocks[c].isometry;
        for (Eigen::Index j = 0; j < w.cols(); ++j)
            out.push_back(vector_state(a, w.col(j), "b" + std::to_string(c) + ".e" + std::to_string(j)));
    }
    return out;
}

GnsRep gns(const State& s, const Tolerance& tol)
{
    const FiniteCStar& a = *s.algebra;
    if (static_cast<int>(s.values.size()) != a.dimension())
        throw DegenerateState("state needs one value per algebra basis element");
    const Complex one = s(identity(a.ambient_dim));
    if (std::abs(one - 1.0) > tol.eps_verify)
        throw DegenerateState("state is not normalized");

    const Matrix g = gram_matrix(s);
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (g + g.adjoint()));
    if (es.info() != Eigen::Success)
        throw NonConvergence("GNS gram eigensolver did not converge");
    const Eigen::VectorXd& lam = es.eigenvalues();
    const double thr = tol.eps_rank * std::max(1.0, lam.size() > 0 ? lam.maxCoeff() : 0.0);

    // Columns of e are the coordinates of an orthonormal basis of A / N_s.
    Matrix e(a.dimension(), 0);
    for (Eigen::Index k = lam.size() - 1; k >= 0; --k)
        if (lam(k) > thr) {
            e.conservativeResize(Eigen::NoChange, e.cols() + 1);
            e.col(e.cols() - 1) = es.eigenvectors().col(k) / std::sqrt(lam(k));
        }

    GnsRep r;
    r.state = s;
    r.rep_dim = static_cast<int>(e.cols());
    const Matrix d = s.density();
    // Orthonormal vectors of A / N_s as algebra elements, and each times d.
    std::vector<Matrix> cls(r.rep_dim), cls_d(r.rep_dim);
    for (int l = 0; l < r.rep_dim; ++l) {
        cls[l] = a.element(e.col(l));
        cls_d[l] = cls[l] * d;
    }
    for (const auto& bm : a.basis) {
        // pi(bm)(k, l) = s(E_k* bm E_l) = <E_k, bm E_l d>_HS.
        Matrix pm(r.rep_dim, r.rep_dim);
        for (int l = 0; l < r.rep_dim; ++l) {
            const Matrix h = bm * cls_d[l];
            for (int k = 0; k < r.rep_dim; ++k)
                pm(k, l) = hs_inner(cls[k], h);
        }
        r.rep_map.push_back(std::move(pm));
    }
    Vector g1(a.dimension());
    for (int i = 0; i < a.dimension(); ++i)
        g1(i) = hs_inner(a.basis[i], d);
    r.cyclic_vector = e.adjoint() * g1;
    return r;
}

namespace {

std::vector<Matrix> generator_images(const GnsRep& r)
{
    const FiniteCStar& a = *r.state.algebra;
    if (a.generators.empty())
        return r.rep_map;
    std::vector<Matrix> out;
    for (const auto& g : a.generators) {
        out.push_back(r.rep(g));
        out.push_back(r.rep(g.adjoint()));
    }
    return out;
}

/// Basis (as columns of vec(X)) of {X : X r1(g) = r2(g) X}.
Matrix intertwiners(const std::vector<Matrix>& im1, const std::vector<Matrix>& im2, int dim, const Tolerance& tol)
{
    const Eigen::Index d2 = static_cast<Eigen::Index>(dim) * dim;
    Matrix system(static_cast<Eigen::Index>(im1.size()) * d2, d2);
    const Matrix eye = identity(dim);
    for (std::size_t g = 0; g < im1.size(); ++g) {
        // vec(X A) = (A^T kron I) vec X, vec(B X) = (I kron B) vec X.
        Matrix k(d2, d2);
        for (int p = 0; p < dim; ++p)
            for (int q = 0; q < dim; ++q)
                k.block(static_cast<Eigen::Index>(p) * dim, static_cast<Eigen::Index>(q) * dim, dim, dim) =
                    im1[g](q, p) * eye - (p == q ? im2[g] : Matrix::Zero(dim, dim));
        system.middleRows(static_cast<Eigen::Index>(g) * d2, d2) = k;
    }
    return null_space(system, tol);
}

} // namespace

bool equivalent(const GnsRep& r1, const GnsRep& r2, const Tolerance& tol, std::uint64_t seed)
{
    if (r1.state.algebra != r2.state.algebra)
        throw DimensionMismatch("equivalent: representations of different algebras");
    if (r1.rep_dim != r2.rep_dim)
        return false;
    const int dim = r1.rep_dim;
    const Matrix space = intertwiners(generator_images(r1), generator_images(r2), dim, tol);
    if (space.cols() == 0)
        return false;
    Rng rng(seed);
    const Matrix coeffs = random_complex(static_cast<int>(space.cols()), 1, rng);
    const Vector x = space * coeffs.col(0);
    const Matrix u = Eigen::Map<const Matrix>(x.data(), dim, dim);
    const Eigen::VectorXd sv = singular_values(u);
    return sv(sv.size() - 1) > tol.eps_rank * std::max(1.0, sv(0));
}

int commutant_dimension(const GnsRep& r, const Tolerance& tol)
{
    const auto im = generator_images(r);
    return static_cast<int>(intertwiners(im, im, r.rep_dim, tol).cols());
}

FinEquivRel relation(std::shared_ptr<const FiniteCStar> a, const Tolerance& tol, std::uint64_t seed)
{
    const auto states = skeleton_states(a);
    std::vector<GnsRep> reps;
    reps.reserve(states.size());
    for (const auto& s : states)
        reps.push_back(gns(s, tol));

    const int n = static_cast<int>(states.size());
    std::vector<PointPair> pairs;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (x == y || equivalent(reps[x], reps[y], tol, seed + static_cast<std::uint64_t>(x * n + y)))
                pairs.emplace_back(x, y);
    std::vector<std::string> labels;
    for (const auto& s : states)
        labels.push_back(s.label);
    try {
        return FinEquivRel::from_pairs(std::move(labels), pairs);
    } catch (const InputError& e) {
        throw NonConvergence(std::string("numerical GNS equivalence is inconsistent: ") + e.what());
    }
}

FinEquivRel block_relation(const FiniteCStar& a)
{
    std::vector<std::string> labels;
    std::vector<int> cls;
    for (std::size_t c = 0; c < a.blocks.size(); ++c)
        for (int j = 0; j < a.blocks[c].block_dim; ++j) {
            labels.push_back("b" + std::to_string(c) + ".e" + std::to_string(j));
            cls.push_back(static_cast<int>(c));
        }
    return FinEquivRel(std::move(labels), cls);
}

} // namespace ncdual
