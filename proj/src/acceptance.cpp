#include "ncdual/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <tuple>

#include "ncdual/algebra.hpp"
#include "ncdual/errors.hpp"
#include "ncdual/kernels.hpp"
#include "ncdual/oml.hpp"
#include "ncdual/omega.hpp"
#include "ncdual/relmeasure.hpp"
#include "ncdual/spectral.hpp"
#include "ncdual/states.hpp"

namespace ncdual::acceptance {

namespace {

struct Case {
    bool ok = true;
    double value = 0.0;
    std::string note;
};

CriterionResult summarize(int id, std::string title, double bound, const std::vector<Case>& cases)
{
    CriterionResult r;
    r.id = id;
    r.title = std::move(title);
    r.bound = bound;
    r.cases = static_cast<int>(cases.size());
    for (const auto& c : cases) {
        r.worst = std::max(r.worst, c.value);
        if (!c.ok) {
            if (r.failures == 0)
                r.detail = c.note;
            ++r.failures;
        }
    }
    r.passed = r.failures == 0 && !cases.empty();
    return r;
}

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

// Block-diagonal sum of X_i (x) I_{m_i}, rotated by u.
Matrix planted_element(const std::vector<std::pair<int, int>>& structure, const Matrix& u, Rng& rng)
{
    int dim = 0;
    for (const auto& [n, m] : structure)
        dim += n * m;
    Matrix out = Matrix::Zero(dim, dim);
    int at = 0;
    for (const auto& [n, m] : structure) {
        const Matrix x = random_complex(n, n, rng);
        for (int k = 0; k < m; ++k) {
            out.block(at, at, n, n) = x;
            at += n;
        }
    }
    return u * out * u.adjoint();
}

std::vector<std::pair<int, int>> random_structure(int dim, Rng& rng)
{
    std::vector<std::pair<int, int>> s;
    std::uniform_int_distribution<int> nd(1, 3), md(1, 2);
    int left = dim;
    while (left > 0) {
        const int n = std::min(nd(rng), left);
        const int m = std::min(md(rng), left / n);
        s.emplace_back(n, m);
        left -= n * m;
    }
    std::sort(s.begin(), s.end());
    return s;
}

// Scaling-and-squaring Taylor series for exp.
Matrix series_exp(const Matrix& a)
{
    const double nrm = op_norm(a);
    int s = 0;
    while (std::ldexp(nrm, -s) > 0.25)
        ++s;
    const Matrix b = a / std::ldexp(1.0, s);
    Matrix term = identity(static_cast<int>(a.rows())), sum = term;
    for (int k = 1; k < 40; ++k) {
        term = term * b / static_cast<double>(k);
        sum += term;
    }
    for (int i = 0; i < s; ++i)
        sum = sum * sum;
    return sum;
}

Matrix horner(const std::vector<Complex>& c, const Matrix& a)
{
    const int n = static_cast<int>(a.rows());
    Matrix v = Matrix::Zero(n, n);
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        v = v * a + *it * identity(n);
    return v;
}

double rel(const Matrix& x, const Matrix& ref)
{
    return (x - ref).norm() / std::max(ref.norm(), 1e-300);
}

using BlockKey = std::tuple<long, long, int>;

std::vector<BlockKey> grid_keys(const std::vector<std::pair<Complex, int>>& blocks, bool& on_grid)
{
    std::vector<BlockKey> keys;
    for (const auto& [lam, size] : blocks) {
        const double re = std::round(lam.real()), im = std::round(lam.imag());
        if (std::abs(lam - Complex(re, im)) > 1e-6)
            on_grid = false;
        keys.emplace_back(std::lround(re), std::lround(im), size);
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

Tolerance default_tol()
{
    return Tolerance{};
}

// ---- criteria -------------------------------------------------------------

CriterionResult c1(std::uint64_t seed)
{
    const auto corpus = algebra_corpus(seed);
    const Tolerance tol = default_tol();
    const double bound = 1e-8;
    auto cases = kernels::parallel_map<Case>(corpus.size(), [&](std::size_t i) {
        const auto& ac = corpus[i];
        Case c;
        try {
            const FiniteCStar alg = generate(ac.ambient_dim, ac.generators, tol, seed + i);
            const auto rep = duality_roundtrip_algebra(alg, tol, seed + 1000 + i);
            c.value = rep.max_residual();
            c.ok = rep.passed(bound);
            if (!c.ok)
                c.note = ac.name + ": residual " + sci(c.value) + (rep.dimension_match ? "" : ", dimension mismatch");
        } catch (const Error& e) {
            c.ok = false;
            c.note = ac.name + ": " + e.what();
        }
        return c;
    });
    return summarize(1, "Duality round-trip on algebras", bound, cases);
}

CriterionResult c2(std::uint64_t seed)
{
    std::vector<std::vector<int>> rels;
    for (int n = 1; n <= 5; ++n)
        for (auto& p : all_partitions(n))
            rels.push_back(std::move(p));
    Rng rng(seed);
    for (int s = 0; s < 50; ++s) {
        const int n = 6 + s % 3;
        std::uniform_int_distribution<int> lab(0, n - 1);
        std::vector<int> cls(n);
        for (auto& c : cls)
            c = lab(rng);
        rels.push_back(cls);
    }
    const Tolerance tol = default_tol();
    auto cases = kernels::parallel_map<Case>(rels.size(), [&](std::size_t i) {
        std::vector<std::string> pts;
        for (std::size_t k = 0; k < rels[i].size(); ++k)
            pts.push_back("p" + std::to_string(k));
        const FinEquivRel r(pts, rels[i]);
        Case c;
        try {
            const auto rep = duality_roundtrip_relation(r, tol, seed + i);
            c.ok = rep.matched && rep.expected_sizes == rep.recovered_sizes;
            c.value = rep.convolution_residual;
            if (!c.ok)
                c.note = "relation " + std::to_string(i) + " on " + std::to_string(r.size()) +
                         " points: class sizes not recovered";
        } catch (const Error& e) {
            c.ok = false;
            c.note = "relation " + std::to_string(i) + ": " + e.what();
        }
        return c;
    });
    return summarize(2, "Relation round-trip recovers class sizes", 0.0, cases);
}

CriterionResult c3(std::uint64_t seed)
{
    const auto corpus = algebra_corpus(seed);
    const Tolerance tol = default_tol();
    auto cases = kernels::parallel_map<Case>(corpus.size(), [&](std::size_t i) {
        const auto& ac = corpus[i];
        Case c;
        try {
            auto alg = std::make_shared<const FiniteCStar>(generate(ac.ambient_dim, ac.generators, tol, seed + i));
            const FinEquivRel r = relation(alg, tol, seed + 2000 + i);
            const bool singletons = r.num_classes() == r.size();
            c.ok = is_commutative(*alg, tol) == singletons;
            if (!c.ok)
                c.note = ac.name + ": commutativity and singleton classes disagree";
        } catch (const Error& e) {
            c.ok = false;
            c.note = ac.name + ": " + e.what();
        }
        return c;
    });
    return summarize(3, "Commutative iff all relation classes are singletons", 0.0, cases);
}

CriterionResult c4(std::uint64_t seed)
{
    const auto corpus = jordan_corpus(seed, 200);
    const Tolerance tol = default_tol();
    const double bound = 1e-8;
    auto cases = kernels::parallel_map<Case>(corpus.size(), [&](std::size_t i) {
        const auto& pm = corpus[i];
        Case c;
        try {
            const SpectralFamily f = spectral_family(pm.a, tol);
            c.value = (pm.a - reconstruct(f)).norm() / std::max(pm.a.norm(), 1e-300);
            std::vector<std::pair<Complex, int>> got;
            for (const auto& b : f.decomposition.blocks)
                got.emplace_back(b.eigenvalue, b.size);
            bool on_grid = true;
            const bool same = grid_keys(got, on_grid) == grid_keys(pm.blocks, on_grid);
            c.ok = c.value <= bound && same && on_grid;
            if (!c.ok)
                c.note = "matrix " + std::to_string(i) + " (dim " + std::to_string(pm.a.rows()) + "): " +
                         (same && on_grid ? "residual " + sci(c.value) : std::string("block structure differs"));
        } catch (const Error& e) {
            c.ok = false;
            c.note = "matrix " + std::to_string(i) + ": " + e.what();
        }
        return c;
    });
    return summarize(4, "Jordan reconstruction and planted block sizes", bound, cases);
}

CriterionResult c5(std::uint64_t seed)
{
    const auto corpus = jordan_corpus(seed, 200);
    const Tolerance tol = default_tol();
    const double bound = 1e-8;
    auto cases = kernels::parallel_map<Case>(corpus.size(), [&](std::size_t i) {
        const Matrix& a = corpus[i].a;
        Case c;
        try {
            const SpectralFamily f = spectral_family(a, tol);
            const auto ax = elementary_axioms(f.orthogonal_measure(), tol);
            double prop2 = 0.0;
            for (const auto& u : f.lattice)
                for (const Matrix& e : {f.orthogonal(u), f.oblique(u)})
                    prop2 = std::max(prop2, (e * a * e - a * e).norm() / std::max(1.0, a.norm()));
            c.value = std::max(ax.max_residual(), prop2);
            c.ok = ax.passed(bound) && prop2 <= bound;
            if (!c.ok)
                c.note = "matrix " + std::to_string(i) + ": axioms " + sci(ax.max_residual()) + ", invariance " +
                         sci(prop2);
        } catch (const Error& e) {
            c.ok = false;
            c.note = "matrix " + std::to_string(i) + ": " + e.what();
        }
        return c;
    });
    return summarize(5, "Elementary-measure axioms and invariant ranges", bound, cases);
}

CriterionResult c6(std::uint64_t seed)
{
    const auto corpus = jordan_corpus(seed, 200);
    Tolerance tol = default_tol();
    auto cases = kernels::parallel_map<Case>(corpus.size(), [&](std::size_t i) {
        Case c;
        try {
            const SpectralFamily f = spectral_family(corpus[i].a, tol);
            for (std::size_t b = 0; b < f.shifts.size(); ++b) {
                const int k = f.decomposition.blocks[b].size;
                const Matrix& s = f.shifts[b];
                Matrix before = f.block_idempotent(static_cast<int>(b));
                for (int p = 1; p < k; ++p)
                    before = s * before;
                const Matrix last = s * before;
                const double scale = std::max(1.0, std::pow(op_norm(s), k));
                const double dead = op_norm(last) / scale;
                const double alive = op_norm(before);
                c.value = std::max(c.value, dead);
                if (dead > tol.eps_verify || alive <= tol.eps_verify) {
                    c.ok = false;
                    c.note = "matrix " + std::to_string(i) + " block " + std::to_string(b) + ": ||S^k|| " + sci(dead) +
                             ", ||S^(k-1)|| " + sci(alive);
                }
            }
        } catch (const Error& e) {
            c.ok = false;
            c.note = "matrix " + std::to_string(i) + ": " + e.what();
        }
        return c;
    });
    return summarize(6, "Shifts vanish exactly at the block size", tol.eps_verify, cases);
}

CriterionResult c7(std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<Matrix> corpus;
    std::uniform_int_distribution<int> dim(1, 8), grid(-2, 2);
    std::normal_distribution<double> g;
    for (int s = 0; s < 50; ++s) {
        const int n = dim(rng);
        Vector lam(n);
        for (int k = 0; k < n; ++k)
            lam(k) = s % 2 == 0 ? Complex(grid(rng), grid(rng)) : Complex(g(rng), g(rng));
        const Matrix u = random_unitary(n, rng);
        corpus.push_back(u * lam.asDiagonal() * u.adjoint());
    }
    const Tolerance tol = default_tol();
    auto cases = kernels::parallel_map<Case>(corpus.size(), [&](std::size_t i) {
        Case c;
        try {
            const SpectralFamily f = spectral_family(corpus[i], tol);
            double shift = 0.0, gap = 0.0;
            bool ones = true;
            for (const auto& b : f.decomposition.blocks)
                ones = ones && b.size == 1;
            for (const auto& s : f.shifts)
                shift = std::max(shift, s.norm());
            for (const auto& u : f.lattice)
                gap = std::max(gap, (f.oblique(u) - f.orthogonal(u)).norm());
            c.value = std::max(shift, gap);
            c.ok = ones && shift <= 1e-10 && gap <= 1e-9;
            if (!c.ok)
                c.note = "normal matrix " + std::to_string(i) + ": " + (ones ? "" : "block of size > 1, ") + "shift " +
                         sci(shift) + ", family gap " + sci(gap);
        } catch (const Error& e) {
            c.ok = false;
            c.note = "normal matrix " + std::to_string(i) + ": " + e.what();
        }
        return c;
    });
    return summarize(7, "Normal matrices reduce to the spectral theorem", 1e-9, cases);
}

CriterionResult c8(std::uint64_t seed)
{
    auto corpus = jordan_corpus(seed + 8, 60, 6, 10.0);
    const Tolerance tol = default_tol();
    auto cases = kernels::parallel_map<Case>(corpus.size(), [&](std::size_t i) {
        const Matrix& a = corpus[i].a;
        const int n = static_cast<int>(a.rows());
        Rng rng(seed + 31 * i);
        std::normal_distribution<double> g;
        Case c;
        std::string why;
        auto check = [&](double v, double bound, const char* what) {
            c.value = std::max(c.value, v / bound * 1e-8);
            if (!(v <= bound) && why.empty())
                why = std::string(what) + " " + sci(v);
        };
        try {
            const SpectralFamily f = spectral_family(a, tol);
            const Matrix id = identity(n);
            check((apply_measure(RelFunction::unit(f), f) - id).norm() / id.norm(), 1e-10, "unit");
            check(rel(apply_measure(RelFunction::z(f), f), a), 1e-10, "identity function");

            auto random_fn = [&]() {
                RelFunction mu = RelFunction::zero(f);
                for (auto& cb : mu.coefficients)
                    for (auto& x : cb)
                        x = Complex(g(rng), g(rng));
                return mu;
            };
            const RelFunction mu = random_fn(), nu = random_fn();
            const Matrix am = apply_measure(mu, f), an = apply_measure(nu, f);
            check((apply_measure(convolve(mu, nu), f) - am * an).norm() / std::max(1.0, am.norm() * an.norm()), 1e-8,
                  "multiplicativity");

            Matrix images(n * n, n);
            int col = 0;
            for (std::size_t b = 0; b < f.decomposition.blocks.size(); ++b)
                for (int d = 0; d < f.decomposition.blocks[b].size; ++d) {
                    RelFunction e = RelFunction::zero(f);
                    e.coefficients[b][d] = 1.0;
                    images.col(col++) = vec(apply_measure(e, f));
                }
            if (rank(images, tol) != n && why.empty())
                why = "calculus not injective on the coefficient basis";

            const auto contours = default_contours(f);
            std::uniform_int_distribution<int> deg(0, 4);
            for (int t = 0; t < 3; ++t) {
                std::vector<Complex> p(deg(rng) + 1);
                for (auto& x : p)
                    x = Complex(g(rng), g(rng));
                const auto fn = AnalyticFunction::polynomial(p);
                const Matrix ref = horner(p, a);
                check(rel(apply_measure(holomorphic(fn, f), f), ref), 1e-7, "polynomial calculus");
                check(rel(riesz(fn, a, contours, tol), ref), 1e-7, "polynomial contour integral");
            }
            const auto ex = AnalyticFunction::parse("exp");
            const Matrix ref = series_exp(a);
            check(rel(apply_measure(holomorphic(ex, f), f), ref), 1e-7, "exp calculus");
            check(rel(riesz(ex, a, contours, tol), ref), 1e-7, "exp contour integral");
        } catch (const Error& e) {
            why = e.what();
        }
        c.ok = why.empty();
        if (!c.ok)
            c.note = "matrix " + std::to_string(i) + ": " + why;
        return c;
    });
    return summarize(8, "Functional calculus (normalized worst; bounds 1e-10/1e-8/1e-7)", 1e-8, cases);
}

CriterionResult c9(std::uint64_t seed)
{
    Rng rng(seed);
    std::uniform_int_distribution<int> dim(2, 10);
    std::normal_distribution<double> g;
    std::vector<Matrix> corpus;
    for (int s = 0; s < 1000; ++s) {
        const int n = dim(rng);
        switch (s % 5) {
        case 0:
            corpus.push_back(random_complex(n, n, rng));
            break;
        case 1: {
            Matrix m(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    m(i, j) = g(rng);
            corpus.push_back(m);
            break;
        }
        case 2: {
            std::uniform_int_distribution<int> grid(-1, 1);
            Vector lam(n);
            for (int k = 0; k < n; ++k)
                lam(k) = Complex(grid(rng), 0.0);
            const Matrix u = random_unitary(n, rng);
            corpus.push_back(u * lam.asDiagonal() * u.adjoint());
            break;
        }
        case 3:
            if (s % 2 == 0)
                corpus.push_back(Complex(g(rng), g(rng)) * identity(n));
            else {
                Matrix m = Matrix::Zero(n, n);
                for (int i = 0; i + 1 < n; ++i)
                    m(i, i + 1) = 1.0;
                const Matrix v = conditioned_basis(n, 10.0, rng);
                corpus.push_back(v * m * v.inverse());
            }
            break;
        default: {
            Matrix a;
            for (std::uint64_t k = 0; a.rows() < 2; ++k)
                a = jordan_corpus(seed * 7919 + s * 131 + k, 1, n, 100.0).front().a;
            corpus.push_back(a);
            break;
        }
        }
    }
    const Tolerance tol = default_tol();
    auto cases = kernels::parallel_map<Case>(corpus.size(), [&](std::size_t i) {
        const Matrix& a = corpus[i];
        const int n = static_cast<int>(a.rows());
        Case c;
        try {
            const Matrix p = invariant_subspace(a, tol);
            const Matrix id = identity(n);
            const double res = ((id - p) * a * p).norm() / std::max(a.norm(), 1e-300);
            const double proj = std::max((p * p - p).norm(), (p - p.adjoint()).norm());
            const int r = rank(p, tol);
            c.value = std::max(res, proj);
            c.ok = res <= 1e-8 && proj <= 1e-8 && r > 0 && r < n;
            if (!c.ok)
                c.note = "matrix " + std::to_string(i) + " (dim " + std::to_string(n) + "): residual " + sci(res) +
                         ", rank " + std::to_string(r);
        } catch (const Error& e) {
            c.ok = false;
            c.note = "matrix " + std::to_string(i) + ": " + e.what();
        }
        return c;
    });
    return summarize(9, "Nontrivial invariant subspaces", 1e-8, cases);
}

CriterionResult c10(std::uint64_t)
{
    std::vector<std::vector<int>> parents;
    for (int n = 1; n <= 4; ++n)
        for (auto& p : all_partitions(n))
            parents.push_back(std::move(p));
    struct Counts {
        int idem = 0, fwd = 0, rev = 0, dist = 0, restricted = 0;
        std::string witness;
    };
    auto counts = kernels::parallel_map<Counts>(parents.size(), [&](std::size_t i) {
        std::vector<std::string> pts;
        for (std::size_t k = 0; k < parents[i].size(); ++k)
            pts.push_back("p" + std::to_string(k));
        auto parent = std::make_shared<const FinEquivRel>(pts, parents[i]);
        const auto r = omega_laws(omega_tables(enumerate_omega(parent)));
        Counts c;
        c.idem = r.idempotence_failures;
        c.fwd = r.forward_failures;
        c.rev = r.reverse_failures;
        c.dist = r.distributive_iff_commute ? 0 : 1;
        if (r.reverse_witness)
            c.witness = "U=" + r.reverse_witness->u.to_string() + ", V=" + r.reverse_witness->v.to_string();
        // Diagnostic only: the same laws on sub-relations defined on every point.
        std::vector<SubRel> full_domain;
        for (const auto& u : enumerate_omega(parent))
            if (static_cast<int>(u.domain().size()) == parent->size())
                full_domain.push_back(u);
        const auto rt = omega_laws(omega_tables(full_domain));
        c.restricted = rt.idempotence_failures + rt.forward_failures + rt.reverse_failures +
                       (rt.distributive_iff_commute ? 0 : 1);
        return c;
    });
    Counts total;
    std::string witness;
    int dist_parent = -1;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        total.idem += counts[i].idem;
        total.fwd += counts[i].fwd;
        total.rev += counts[i].rev;
        total.dist += counts[i].dist;
        total.restricted += counts[i].restricted;
        if (witness.empty() && !counts[i].witness.empty())
            witness = counts[i].witness;
        if (dist_parent < 0 && counts[i].dist)
            dist_parent = static_cast<int>(i);
    }
    CriterionResult r;
    r.id = 10;
    r.title = "Omega lattice laws (idempotence, join vs product, distributivity)";
    r.cases = static_cast<int>(parents.size());
    r.failures = total.idem + total.fwd + total.rev + total.dist;
    r.worst = r.failures;
    r.passed = r.failures == 0;
    if (!r.passed) {
        r.detail = "idempotence " + std::to_string(total.idem) + ", join=product but not commuting " +
                   std::to_string(total.fwd) + ", commuting but join!=product " + std::to_string(total.rev) +
                   ", parents where distributivity and commutation disagree " + std::to_string(total.dist);
        if (!witness.empty())
            r.detail += "; e.g. " + witness;
        r.detail += "; on full-domain sub-relations only: " + std::to_string(total.restricted) + " counterexamples";
    }
    return r;
}

CriterionResult c11(std::uint64_t seed)
{
    const Tolerance tol = default_tol();
    const auto groups = group_corpus();
    auto cases = kernels::parallel_map<Case>(groups.size(), [&](std::size_t i) {
        const FiniteGroup& g = groups[i];
        Case c;
        std::string why;
        try {
            const auto reps = irreps(g, seed + i, tol);
            int sq = 0;
            std::vector<int> dims;
            for (const auto& r : reps) {
                sq += r.dim * r.dim;
                dims.push_back(r.dim);
            }
            std::sort(dims.begin(), dims.end());
            c.value = irrep_residual(g, reps);
            if (sq != g.order())
                why = "sum of squared irrep dimensions " + std::to_string(sq);

            const QuantumGroup dq = dual(g, tol, seed + i);
            dq.validate();
            std::vector<int> sizes;
            for (const auto& cl : dq.space.classes())
                sizes.push_back(static_cast<int>(cl.size()));
            std::sort(sizes.begin(), sizes.end());
            if (sizes != dims && why.empty())
                why = "dual class sizes differ from irrep dimensions";
            if (g.is_abelian()) {
                const auto dd = double_dual_abelian(g, tol, seed + i);
                if (!dd.ok() && why.empty())
                    why = "double dual is not isomorphic via evaluation";
            } else {
                std::vector<int> expect = g.name() == "S3" ? std::vector<int>{1, 1, 2} : std::vector<int>{1, 1, 1, 1, 2};
                if (dims != expect && why.empty())
                    why = "irrep dimensions differ from the expected multiset";
            }
            const QuantumGroup gq = as_quantum_group(g);
            for (const QuantumGroup* q : {&gq, &dq}) {
                const auto cm = comultiplication_check(*q, tol, seed + i);
                if (!cm.verdict_matches && why.empty())
                    why = q->name + ": degeneracy verdict does not match group status";
                if (cm.coassociativity_residual > tol.eps_verify && why.empty())
                    why = q->name + ": coassociativity residual " + sci(cm.coassociativity_residual);
            }
            const std::string cg = classify(gq), cd = classify(dq);
            const std::string want_g = g.is_abelian() ? "abelian-commutative" : "nonabelian-commutative";
            const std::string want_d = g.is_abelian() ? "abelian-commutative" : "abelian-noncommutative";
            if ((cg != want_g || cd != want_d) && why.empty())
                why = "quadrant " + cg + " / " + cd;
        } catch (const Error& e) {
            why = e.what();
        }
        c.ok = why.empty() && c.value <= tol.eps_verify;
        if (!c.ok)
            c.note = g.name() + ": " + (why.empty() ? "irrep residual " + sci(c.value) : why);
        return c;
    });
    // Pure quantum spaces: degenerate unless a single point.
    const std::vector<std::vector<int>> spaces = {{0}, {0, 1}, {0, 0}, {0, 0, 1}, {0, 1, 1, 1}, {0, 0, 1, 1}};
    for (const auto& cls : spaces) {
        QuantumSpace s;
        for (std::size_t k = 0; k < cls.size(); ++k)
            s.points.push_back("x" + std::to_string(k));
        s.class_of = cls;
        const QuantumGroup q = pure_quantum_space(s);
        const auto cm = comultiplication_check(q, tol, seed);
        Case c;
        const bool singletons = q.commutative_topology;
        const std::string want = singletons ? "abelian-commutative" : "abelian-noncommutative";
        c.ok = cm.verdict_matches && classify(q) == want && cm.nondegenerate == (cls.size() == 1);
        if (!c.ok)
            c.note = "pure quantum space with " + std::to_string(cls.size()) + " points: verdict or quadrant wrong";
        cases.push_back(c);
    }
    return summarize(11, "Finite Pontryagin duality and quantum-group quadrants", tol.eps_verify, cases);
}

CriterionResult c12(std::uint64_t)
{
    std::vector<Case> cases;
    {
        const FiniteLattice l = mo2();
        Case c;
        // a = 1, b = 3
        const bool witness = dot_meet(l, 1, 3) == 3 && dot_meet(l, 3, 1) == 1;
        c.ok = is_oml(l).ok() && !is_boolean(l) && witness && !is_distributive(l);
        if (!c.ok)
            c.note = "MO2 misclassified";
        cases.push_back(c);
    }
    for (int k = 0; k <= 4; ++k) {
        const FiniteLattice l = boolean_algebra(k);
        Case c;
        try {
            const auto s = stone(l);
            c.ok = is_oml(l).ok() && s.ok() && static_cast<int>(s.atoms.size()) == k && is_distributive(l);
        } catch (const Error& e) {
            c.ok = false;
            c.note = e.what();
        }
        if (!c.ok && c.note.empty())
            c.note = "Stone representation of 2^" + std::to_string(k) + " failed";
        cases.push_back(c);
    }
    {
        const Tolerance tol = default_tol();
        Matrix p = Matrix::Zero(2, 2);
        p(0, 0) = 1.0;
        const Matrix q = Matrix::Constant(2, 2, 0.5);
        const auto pl = projection_lattice({p, q}, tol);
        Case c;
        c.ok = is_oml(pl.lattice).ok() && !is_boolean(pl.lattice);
        if (!c.ok)
            c.note = "noncommuting projection lattice classified as Boolean";
        cases.push_back(c);
    }
    return summarize(12, "Orthomodular lattices and Stone representation", 0.0, cases);
}

CriterionResult c13(std::uint64_t seed)
{
    const auto corpus = algebra_corpus(seed);
    const Tolerance tol = default_tol();
    auto cases = kernels::parallel_map<Case>(corpus.size(), [&](std::size_t i) {
        const auto& ac = corpus[i];
        Case c;
        try {
            const FiniteCStar alg = generate(ac.ambient_dim, ac.generators, tol, seed + i);
            const int z = center(alg, tol).dimension;
            c.ok = z == static_cast<int>(alg.blocks.size());
            if (!c.ok)
                c.note = ac.name + ": center dimension " + std::to_string(z) + ", blocks " +
                         std::to_string(alg.blocks.size());
        } catch (const Error& e) {
            c.ok = false;
            c.note = ac.name + ": " + e.what();
        }
        return c;
    });
    return summarize(13, "Center dimension equals the number of blocks", 0.0, cases);
}

} // namespace

Matrix conditioned_basis(int n, double condition, Rng& rng)
{
    const Matrix u = random_unitary(n, rng), w = random_unitary(n, rng);
    Vector s(n);
    for (int k = 0; k < n; ++k)
        s(k) = n == 1 ? 1.0 : std::pow(condition, static_cast<double>(k) / (n - 1));
    return u * s.asDiagonal() * w;
}

std::vector<AlgebraCase> algebra_corpus(std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<AlgebraCase> out;
    for (int n = 1; n <= 4; ++n) {
        Matrix d = Matrix::Zero(n, n);
        for (int k = 0; k < n; ++k)
            d(k, k) = static_cast<double>(k + 1);
        out.push_back({"C^" + std::to_string(n), n, {d}, std::vector<std::pair<int, int>>(n, {1, 1})});
    }
    auto planted = [&](std::string name, std::vector<std::pair<int, int>> s, bool rotate) {
        int dim = 0;
        for (const auto& [a, b] : s)
            dim += a * b;
        const Matrix u = rotate ? random_unitary(dim, rng) : identity(dim);
        std::vector<Matrix> gens{planted_element(s, u, rng), planted_element(s, u, rng)};
        std::sort(s.begin(), s.end());
        out.push_back({std::move(name), dim, std::move(gens), std::move(s)});
    };
    planted("M2", {{2, 1}}, false);
    planted("M3", {{3, 1}}, false);
    planted("C+M2", {{1, 1}, {2, 1}}, false);
    planted("M2+M2", {{2, 1}, {2, 1}}, false);
    planted("M2 (x) 1_2", {{2, 2}}, false);
    planted("M2 (x) 1_2 + M2", {{2, 2}, {2, 1}}, true);
    std::uniform_int_distribution<int> dim(4, 6);
    for (int s = 0; s < 20; ++s) {
        const int n = dim(rng);
        planted("random M" + std::to_string(n) + " #" + std::to_string(s), random_structure(n, rng), true);
    }
    return out;
}

std::vector<PlantedMatrix> jordan_corpus(std::uint64_t seed, int count, int max_dim, double max_condition)
{
    Rng rng(seed);
    std::vector<PlantedMatrix> out;
    std::uniform_int_distribution<int> dim(1, max_dim), re(-2, 2), im(-1, 1);
    std::uniform_real_distribution<double> logc(0.0, std::log10(max_condition));
    for (int s = 0; s < count; ++s) {
        const int n = dim(rng);
        PlantedMatrix pm;
        Matrix j = Matrix::Zero(n, n);
        int at = 0;
        while (at < n) {
            std::uniform_int_distribution<int> size(1, n - at);
            const int k = size(rng);
            const Complex lam(re(rng), im(rng));
            for (int i = 0; i < k; ++i) {
                j(at + i, at + i) = lam;
                if (i > 0)
                    j(at + i - 1, at + i) = 1.0;
            }
            pm.blocks.emplace_back(lam, k);
            at += k;
        }
        pm.condition = std::pow(10.0, logc(rng));
        const Matrix v = conditioned_basis(n, pm.condition, rng);
        pm.a = v * j * v.inverse();
        out.push_back(std::move(pm));
    }
    return out;
}

std::vector<FiniteGroup> group_corpus()
{
    std::vector<FiniteGroup> out;
    for (int n = 1; n <= 16; ++n)
        out.push_back(FiniteGroup::cyclic(n));
    for (const char* name : {"Z2xZ2", "Z2xZ4", "Z2xZ2xZ2", "Z3xZ3", "Z2xZ6", "Z4xZ4", "Z2xZ8", "Z2xZ2xZ4",
                             "Z2xZ2xZ2xZ2", "S3", "D4", "Q8"})
        out.push_back(FiniteGroup::named(name));
    return out;
}

CriterionResult run_criterion(int id, std::uint64_t seed)
{
    switch (id) {
    case 1:
        return c1(seed);
    case 2:
        return c2(seed);
    case 3:
        return c3(seed);
    case 4:
        return c4(seed);
    case 5:
        return c5(seed);
    case 6:
        return c6(seed);
    case 7:
        return c7(seed);
    case 8:
        return c8(seed);
    case 9:
        return c9(seed);
    case 10:
        return c10(seed);
    case 11:
        return c11(seed);
    case 12:
        return c12(seed);
    case 13:
        return c13(seed);
    default:
        throw InputError("unknown criterion " + std::to_string(id));
    }
}

std::vector<CriterionResult> run_all(std::uint64_t seed)
{
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriteria; ++id)
        out.push_back(run_criterion(id, seed));
    return out;
}

std::string format_line(const CriterionResult& r)
{
    char head[16];
    std::snprintf(head, sizeof head, "[%2d]", r.id);
    std::string s = std::string(r.passed ? "PASS " : "FAIL ") + head + " " + r.title + " (" + std::to_string(r.cases) +
                    " cases";
    if (r.bound > 0.0)
        s += ", worst " + sci(r.worst) + " vs bound " + sci(r.bound);
    if (r.failures > 0)
        s += ", " + std::to_string(r.failures) + " failing";
    s += ")";
    if (!r.detail.empty())
        s += ": " + r.detail;
    return s;
}

} // namespace ncdual::acceptance
