#include "ncdual/duality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "ncdual/errors.hpp"
#include "ncdual/relmeasure.hpp"

namespace ncdual {

namespace {

// Characters agree when every value matches to this accuracy.
constexpr double kCharacterMatch = 1e-6;

std::string triple(int i, int j, int k)
{
    return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

} // namespace

FiniteGroup::FiniteGroup(int order, std::vector<int> table, std::string name)
    : order_(order), table_(std::move(table)), name_(std::move(name))
{
    if (order_ < 1)
        throw InputError("group order must be positive");
    if (table_.size() != static_cast<std::size_t>(order_) * order_)
        throw InputError("table must have order*order = " + std::to_string(order_ * order_) + " entries, got " +
                         std::to_string(table_.size()));
    for (std::size_t k = 0; k < table_.size(); ++k)
        if (table_[k] < 0 || table_[k] >= order_)
            throw InputError("table entry " + std::to_string(k) + " out of range");
    for (int i = 0; i < order_; ++i)
        for (int j = 0; j < order_; ++j)
            for (int k = 0; k < order_; ++k)
                if (mul(mul(i, j), k) != mul(i, mul(j, k)))
                    throw InputError("table not associative at " + triple(i, j, k));
    identity_ = -1;
    for (int e = 0; e < order_ && identity_ < 0; ++e) {
        bool ok = true;
        for (int x = 0; x < order_ && ok; ++x)
            ok = mul(e, x) == x && mul(x, e) == x;
        if (ok)
            identity_ = e;
    }
    if (identity_ < 0)
        throw InputError("table has no identity element");
    inverses_.assign(order_, -1);
    for (int a = 0; a < order_; ++a) {
        for (int b = 0; b < order_; ++b)
            if (mul(a, b) == identity_ && mul(b, a) == identity_) {
                inverses_[a] = b;
                break;
            }
        if (inverses_[a] < 0)
            throw InputError("element " + std::to_string(a) + " has no inverse");
    }
}

FiniteGroup FiniteGroup::cyclic(int n)
{
    if (n < 1)
        throw InputError("cyclic group order must be positive");
    std::vector<int> t(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            t[i * n + j] = (i + j) % n;
    return FiniteGroup(n, std::move(t), "Z" + std::to_string(n));
}

FiniteGroup FiniteGroup::dihedral(int n)
{
    if (n < 1)
        throw InputError("dihedral parameter must be positive");
    // r^a s^f at index a + n f; (r^a s^f)(r^b s^g) = r^(a + (-1)^f b) s^(f + g).
    const int order = 2 * n;
    std::vector<int> t(static_cast<std::size_t>(order) * order);
    for (int x = 0; x < order; ++x)
        for (int y = 0; y < order; ++y) {
            const int a = x % n, f = x / n, b = y % n, g = y / n;
            const int r = ((a + (f ? -b : b)) % n + n) % n;
            t[x * order + y] = r + n * ((f + g) % 2);
        }
    return FiniteGroup(order, std::move(t), "D" + std::to_string(n));
}

FiniteGroup FiniteGroup::symmetric3()
{
    FiniteGroup g = dihedral(3);
    return FiniteGroup(g.order(), g.table(), "S3");
}

FiniteGroup FiniteGroup::quaternion()
{
    // Units 1, i, j, k as 0..3; element s * 4 + u is (-1)^s u.
    static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    std::vector<int> t(64);
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) {
            const int u = x % 4, v = y % 4;
            const int s = (x / 4 + y / 4 + sign[u][v]) % 2;
            t[x * 8 + y] = s * 4 + unit[u][v];
        }
    return FiniteGroup(8, std::move(t), "Q8");
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b)
{
    const int na = a.order(), nb = b.order(), n = na * nb;
    std::vector<int> t(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            t[x * n + y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
    return FiniteGroup(n, std::move(t), a.name() + "x" + b.name());
}

FiniteGroup FiniteGroup::named(const std::string& name)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto x = name.find('x', start);
        parts.push_back(name.substr(start, x - start));
        if (x == std::string::npos)
            break;
        start = x + 1;
    }
    auto one = [](const std::string& p) -> FiniteGroup {
        auto number = [&](std::size_t from) {
            if (p.size() <= from || p.find_first_not_of("0123456789", from) != std::string::npos)
                throw InputError("unknown group '" + p + "'");
            return std::stoi(p.substr(from));
        };
        if (p == "S3")
            return symmetric3();
        if (p == "Q8")
            return quaternion();
        if (!p.empty() && p[0] == 'Z')
            return cyclic(number(1));
        if (!p.empty() && p[0] == 'D')
            return dihedral(number(1));
        throw InputError("unknown group '" + p + "'");
    };
    FiniteGroup g = one(parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i)
        g = product(g, one(parts[i]));
    return g;
}

bool FiniteGroup::is_abelian() const
{
    for (int a = 0; a < order_; ++a)
        for (int b = a + 1; b < order_; ++b)
            if (mul(a, b) != mul(b, a))
                return false;
    return true;
}

std::vector<Irrep> irreps(const FiniteGroup& g, std::uint64_t seed, const Tolerance& tol)
{
    const int n = g.order();
    std::vector<Matrix> regular(n, Matrix::Zero(n, n));
    for (int x = 0; x < n; ++x)
        for (int h = 0; h < n; ++h)
            regular[x](g.mul(x, h), h) = 1.0;
    const FiniteCStar alg = generate(n, regular, tol, seed);
    std::vector<Irrep> out;
    for (const auto& b : alg.blocks) {
        Irrep r;
        r.dim = b.block_dim;
        for (const auto& l : regular)
            r.rep.push_back(b.isometry.adjoint() * l * b.isometry);
        out.push_back(std::move(r));
    }
    return out;
}

double irrep_residual(const FiniteGroup& g, const std::vector<Irrep>& reps)
{
    double worst = 0.0;
    for (const auto& r : reps)
        for (int x = 0; x < g.order(); ++x) {
            worst = std::max(worst, (r.rep[x].adjoint() * r.rep[x] - identity(r.dim)).norm());
            for (int y = 0; y < g.order(); ++y)
                worst = std::max(worst, (r.rep[x] * r.rep[y] - r.rep[g.mul(x, y)]).norm());
        }
    return worst;
}

void QuantumGroup::validate() const
{
    space.validate();
    const int n = size();
    if (product.size() != static_cast<std::size_t>(n) * n)
        throw InputError("product table size mismatch");
    for (int p : product)
        if (p < -1 || p >= n)
            throw InputError("product entry out of range");
    const auto cls = space.classes();
    if (class_law.size() != cls.size())
        throw InputError("class law size mismatch");
    for (std::size_t y = 0; y < cls.size(); ++y)
        for (int x : cls[y])
            for (int xp : cls[y]) {
                const int m = mul(x, xp);
                if (m < 0)
                    continue;
                if (class_law[y] < 0 || space.class_of[m] != class_law[y])
                    throw InputError("multiplication leaves the fibre over class_law at (" + space.points[x] + ", " +
                                     space.points[xp] + ")");
            }
    bool singletons = true;
    for (const auto& c : cls)
        singletons = singletons && c.size() == 1;
    if (singletons != commutative_topology)
        throw InputError("commutative_topology flag does not match the classes");
    bool comm = true;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (mul(x, y) >= 0 && mul(y, x) >= 0 && mul(x, y) != mul(y, x))
                comm = false;
    if (comm != abelian)
        throw InputError("abelian flag does not match the multiplication");
}

QuantumGroup as_quantum_group(const FiniteGroup& g)
{
    QuantumGroup q;
    const int n = g.order();
    for (int x = 0; x < n; ++x) {
        q.space.points.push_back("g" + std::to_string(x));
        q.space.class_of.push_back(x);
        q.class_law.push_back(g.mul(x, x));
    }
    q.product = g.table();
    q.abelian = g.is_abelian();
    q.commutative_topology = true;
    q.name = g.name();
    return q;
}

QuantumGroup dual(const FiniteGroup& g, const Tolerance& tol, std::uint64_t seed)
{
    const auto reps = irreps(g, seed, tol);
    QuantumGroup q;
    q.name = "dual(" + g.name() + ")";
    std::vector<int> first_point;
    for (std::size_t c = 0; c < reps.size(); ++c) {
        first_point.push_back(static_cast<int>(q.space.points.size()));
        for (int j = 0; j < reps[c].dim; ++j) {
            q.space.points.push_back("chi" + std::to_string(c) + "." + std::to_string(j));
            q.space.class_of.push_back(static_cast<int>(c));
        }
    }
    const int n = static_cast<int>(q.space.points.size());
    q.product.assign(static_cast<std::size_t>(n) * n, -1);
    q.class_law.assign(reps.size(), -1);

    auto match = [&](const std::vector<Complex>& values) {
        for (std::size_t c = 0; c < reps.size(); ++c) {
            if (reps[c].dim != 1)
                continue;
            bool ok = true;
            for (int x = 0; x < g.order() && ok; ++x)
                ok = std::abs(reps[c].rep[x](0, 0) - values[x]) <= kCharacterMatch;
            if (ok)
                return static_cast<int>(c);
        }
        throw NonConvergence("product of characters is not a character");
    };
    for (std::size_t a = 0; a < reps.size(); ++a)
        for (std::size_t b = 0; b < reps.size(); ++b) {
            if (reps[a].dim != 1 || reps[b].dim != 1)
                continue;
            std::vector<Complex> v(g.order());
            for (int x = 0; x < g.order(); ++x)
                v[x] = reps[a].rep[x](0, 0) * reps[b].rep[x](0, 0);
            const int c = match(v);
            q.product[static_cast<std::size_t>(first_point[a]) * n + first_point[b]] = first_point[c];
            if (a == b)
                q.class_law[a] = c;
        }
    bool singletons = true;
    for (const auto& r : reps)
        singletons = singletons && r.dim == 1;
    q.commutative_topology = singletons;
    q.abelian = true;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (q.mul(x, y) >= 0 && q.mul(y, x) >= 0 && q.mul(x, y) != q.mul(y, x))
                q.abelian = false;
    return q;
}

QuantumGroup pure_quantum_space(const QuantumSpace& s)
{
    s.validate();
    QuantumGroup q;
    q.space = s;
    const int n = static_cast<int>(s.points.size());
    q.product.assign(static_cast<std::size_t>(n) * n, -1);
    for (int x = 0; x < n; ++x)
        q.product[static_cast<std::size_t>(x) * n + x] = x;
    q.class_law.resize(s.num_classes());
    for (int y = 0; y < s.num_classes(); ++y)
        q.class_law[y] = y;
    q.abelian = true;
    bool singletons = true;
    for (const auto& c : s.classes())
        singletons = singletons && c.size() == 1;
    q.commutative_topology = singletons;
    q.name = "space";
    return q;
}

ComultiplicationReport comultiplication_check(const QuantumGroup& q, const Tolerance&, std::uint64_t seed)
{
    ComultiplicationReport rep;
    const int n = q.size();
    std::vector<PointPair> pairs;
    std::vector<int> index(static_cast<std::size_t>(n) * n, -1);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (q.space.class_of[x] == q.space.class_of[y]) {
                index[static_cast<std::size_t>(x) * n + y] = static_cast<int>(pairs.size());
                pairs.emplace_back(x, y);
            }
    const int r = static_cast<int>(pairs.size());
    rep.relation_pairs = r;

    std::vector<int> prod(static_cast<std::size_t>(r) * r, -1);
    for (int u = 0; u < r; ++u)
        for (int v = 0; v < r; ++v) {
            const int a = q.mul(pairs[u].first, pairs[v].first);
            const int b = q.mul(pairs[u].second, pairs[v].second);
            if (a >= 0 && b >= 0)
                prod[static_cast<std::size_t>(u) * r + v] = index[static_cast<std::size_t>(a) * n + b];
            if (prod[static_cast<std::size_t>(u) * r + v] < 0)
                ++rep.undefined_products;
        }
    // d(1) = 1 (x) 1 exactly when every product is defined.
    rep.nondegenerate = rep.undefined_products == 0;

    Rng rng(seed);
    std::normal_distribution<double> gauss;
    std::vector<Complex> mu(r);
    for (auto& m : mu)
        m = Complex(gauss(rng), gauss(rng));
    auto P = [&](int u, int v) { return (u < 0 || v < 0) ? -1 : prod[static_cast<std::size_t>(u) * r + v]; };
    auto val = [&](int w) { return w < 0 ? Complex(0.0) : mu[w]; };
    for (int u = 0; u < r; ++u)
        for (int v = 0; v < r; ++v)
            for (int w = 0; w < r; ++w)
                rep.coassociativity_residual =
                    std::max(rep.coassociativity_residual, std::abs(val(P(P(u, v), w)) - val(P(u, P(v, w)))));

    bool total = std::none_of(q.product.begin(), q.product.end(), [](int p) { return p < 0; });
    if (total) {
        try {
            FiniteGroup check(n, q.product);
            rep.is_group = true;
        } catch (const InputError&) {
            rep.is_group = false;
        }
    }
    rep.verdict_matches = rep.nondegenerate == rep.is_group;

    bool diagonal = true;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (q.mul(x, y) != (x == y ? x : -1))
                diagonal = false;
    if (diagonal)
        rep.note = "diagonal multiplication: d is supported on the diagonal of R x R, and the space is its own dual";
    else
        rep.note = "measures on the finite relation stand in for their biduals; the coproduct is evaluated on point masses";
    return rep;
}

ComultiplicationReport comultiplication_check(const FiniteGroup& g, const Tolerance& tol, std::uint64_t seed)
{
    return comultiplication_check(as_quantum_group(g), tol, seed);
}

namespace {

struct CharacterTable {
    FiniteGroup group;
    /// values[c][x] = chi_c(x).
    std::vector<std::vector<Complex>> values;
};

CharacterTable characters(const FiniteGroup& g, const Tolerance& tol, std::uint64_t seed)
{
    if (!g.is_abelian())
        throw NotAbelian("group " + g.name() + " is not abelian");
    const auto reps = irreps(g, seed, tol);
    CharacterTable t;
    for (const auto& r : reps)
        if (r.dim != 1)
            throw NonConvergence("abelian group produced a higher-dimensional irrep");
    const int k = static_cast<int>(reps.size());
    for (const auto& r : reps) {
        std::vector<Complex> v(g.order());
        for (int x = 0; x < g.order(); ++x)
            v[x] = r.rep[x](0, 0);
        t.values.push_back(std::move(v));
    }
    std::vector<int> table(static_cast<std::size_t>(k) * k, -1);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            for (int c = 0; c < k; ++c) {
                bool ok = true;
                for (int x = 0; x < g.order() && ok; ++x)
                    ok = std::abs(t.values[a][x] * t.values[b][x] - t.values[c][x]) <= kCharacterMatch;
                if (ok) {
                    table[static_cast<std::size_t>(a) * k + b] = c;
                    break;
                }
            }
    for (int p : table)
        if (p < 0)
            throw NonConvergence("characters are not closed under multiplication");
    t.group = FiniteGroup(k, std::move(table), "dual(" + g.name() + ")");
    return t;
}

} // namespace

FiniteGroup character_group(const FiniteGroup& g, const Tolerance& tol, std::uint64_t seed)
{
    return characters(g, tol, seed).group;
}

DoubleDualReport double_dual_abelian(const FiniteGroup& g, const Tolerance& tol, std::uint64_t seed)
{
    DoubleDualReport rep;
    rep.order = g.order();
    const CharacterTable first = characters(g, tol, seed);
    const CharacterTable second = characters(first.group, tol, seed + 1);
    rep.dual_order = first.group.order();
    rep.double_dual_order = second.group.order();

    const int k = rep.dual_order;
    rep.evaluation.assign(g.order(), -1);
    for (int x = 0; x < g.order(); ++x) {
        double best = std::numeric_limits<double>::infinity();
        for (int p = 0; p < rep.double_dual_order; ++p) {
            double err = 0.0;
            for (int c = 0; c < k; ++c)
                err = std::max(err, std::abs(second.values[p][c] - first.values[c][x]));
            if (err < best) {
                best = err;
                rep.evaluation[x] = p;
            }
        }
        rep.character_residual = std::max(rep.character_residual, best);
    }
    std::vector<int> sorted = rep.evaluation;
    std::sort(sorted.begin(), sorted.end());
    rep.bijective = rep.double_dual_order == g.order() && rep.character_residual <= kCharacterMatch &&
                    std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    rep.homomorphism = rep.character_residual <= kCharacterMatch;
    for (int x = 0; x < g.order(); ++x)
        for (int y = 0; y < g.order(); ++y)
            if (rep.evaluation[g.mul(x, y)] != second.group.mul(rep.evaluation[x], rep.evaluation[y]))
                rep.homomorphism = false;
    return rep;
}

BlockAgreementReport dual_block_agreement(const FiniteGroup& g, const Tolerance& tol, std::uint64_t seed)
{
    BlockAgreementReport rep;
    for (const auto& r : irreps(g, seed, tol))
        rep.group_algebra_blocks.push_back(r.dim);
    std::sort(rep.group_algebra_blocks.begin(), rep.group_algebra_blocks.end());
    const QuantumGroup d = dual(g, tol, seed);
    const FinEquivRel rel(d.space.points, d.space.class_of);
    const auto rr = duality_roundtrip_relation(rel, tol, seed + 7);
    rep.dual_measure_blocks = rr.recovered_sizes;
    rep.agree = rr.matched && rep.group_algebra_blocks == rep.dual_measure_blocks;
    return rep;
}

std::string classify(const QuantumGroup& q)
{
    return std::string(q.abelian ? "abelian" : "nonabelian") + "-" +
           (q.commutative_topology ? "commutative" : "noncommutative");
}

} // namespace ncdual
