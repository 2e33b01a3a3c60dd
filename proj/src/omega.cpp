#include "ncdual/omega.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "ncdual/errors.hpp"
#include "ncdual/kernels.hpp"

namespace ncdual {

namespace {

std::vector<int> canonical_partial(const std::vector<int>& labels)
{
    std::map<int, int> renum;
    std::vector<int> out(labels.size(), -1);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0)
            continue;
        auto it = renum.find(labels[i]);
        if (it == renum.end())
            it = renum.emplace(labels[i], static_cast<int>(renum.size())).first;
        out[i] = it->second;
    }
    return out;
}

void require_same_parent(const SubRel& u, const SubRel& v)
{
    if (u.parent_ptr() != v.parent_ptr() && !(u.parent() == v.parent()))
        throw ParentMismatch("sub-relations of different parent relations");
}

struct UnionFind {
    std::vector<int> up;
    explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
    int find(int x) { return up[x] == x ? x : up[x] = find(up[x]); }
    void unite(int a, int b) { up[find(a)] = find(b); }
};

} // namespace

SubRel::SubRel(std::shared_ptr<const FinEquivRel> parent, std::vector<int> labels)
    : parent_(std::move(parent)), labels_(canonical_partial(labels))
{
    if (!parent_ || static_cast<int>(labels_.size()) != parent_->size())
        throw InputError("sub-relation labels must cover every parent point");
    // Each class must sit inside one parent class.
    std::map<int, int> parent_class;
    for (int x = 0; x < parent_->size(); ++x) {
        if (labels_[x] < 0)
            continue;
        auto [it, fresh] = parent_class.emplace(labels_[x], parent_->class_of(x));
        if (!fresh && it->second != parent_->class_of(x))
            throw InputError("sub-relation class crosses parent classes at point " + parent_->points()[x]);
    }
}

SubRel SubRel::empty(std::shared_ptr<const FinEquivRel> parent)
{
    const int n = parent->size();
    return SubRel(std::move(parent), std::vector<int>(n, -1));
}

SubRel SubRel::full(std::shared_ptr<const FinEquivRel> parent)
{
    std::vector<int> labels = parent->class_of();
    return SubRel(std::move(parent), std::move(labels));
}

SubRel SubRel::from_pairs(std::shared_ptr<const FinEquivRel> parent, const std::vector<PointPair>& pairs)
{
    const int n = parent->size();
    std::vector<char> rel(static_cast<std::size_t>(n) * n, 0);
    auto at = [&](int x, int y) -> char& { return rel[static_cast<std::size_t>(x) * n + y]; };
    const auto& pts = parent->points();
    for (const auto& [x, y] : pairs) {
        if (x < 0 || y < 0 || x >= n || y >= n)
            throw InputError("subset pair index out of range");
        if (!parent->contains(x, y))
            throw InputError("subset pair (" + pts[x] + ", " + pts[y] + ") is not in the parent relation");
        at(x, y) = 1;
    }
    std::vector<char> touched(n, 0);
    for (const auto& [x, y] : pairs)
        touched[x] = touched[y] = 1;
    for (int x = 0; x < n; ++x)
        if (touched[x] && !at(x, x))
            throw InputError("subset pairs not reflexive at " + pts[x]);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (at(x, y) && !at(y, x))
                throw InputError("subset pairs not symmetric at (" + pts[x] + ", " + pts[y] + ")");
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (at(x, y) && at(y, z) && !at(x, z))
                    throw InputError("subset pairs not transitive at (" + pts[x] + ", " + pts[y] + ", " + pts[z] + ")");
    std::vector<int> labels(n, -1);
    for (int x = 0; x < n; ++x) {
        if (!touched[x])
            continue;
        for (int y = 0; y <= x; ++y)
            if (at(x, y)) {
                labels[x] = y;
                break;
            }
    }
    return SubRel(std::move(parent), std::move(labels));
}

bool SubRel::is_empty() const
{
    return std::all_of(labels_.begin(), labels_.end(), [](int l) { return l < 0; });
}

bool SubRel::contains(int x, int y) const
{
    return labels_[x] >= 0 && labels_[x] == labels_[y];
}

std::vector<int> SubRel::domain() const
{
    std::vector<int> d;
    for (std::size_t x = 0; x < labels_.size(); ++x)
        if (labels_[x] >= 0)
            d.push_back(static_cast<int>(x));
    return d;
}

std::vector<PointPair> SubRel::pairs() const
{
    std::vector<PointPair> out;
    const int n = static_cast<int>(labels_.size());
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (contains(x, y))
                out.emplace_back(x, y);
    return out;
}

int SubRel::pair_count() const
{
    std::map<int, int> sizes;
    for (int l : labels_)
        if (l >= 0)
            ++sizes[l];
    int c = 0;
    for (const auto& [l, s] : sizes)
        c += s * s;
    return c;
}

bool SubRel::subset_of(const SubRel& o) const
{
    const int n = static_cast<int>(labels_.size());
    for (int x = 0; x < n; ++x)
        for (int y = x; y < n; ++y)
            if (contains(x, y) && !o.contains(x, y))
                return false;
    return true;
}

std::string SubRel::to_string() const
{
    std::map<int, std::vector<int>> cls;
    for (std::size_t x = 0; x < labels_.size(); ++x)
        if (labels_[x] >= 0)
            cls[labels_[x]].push_back(static_cast<int>(x));
    std::string s = "{";
    bool first = true;
    for (const auto& [l, pts] : cls) {
        if (!first)
            s += ", ";
        first = false;
        s += "{";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i)
                s += ",";
            s += parent_->points()[pts[i]];
        }
        s += "}";
    }
    return s + "}";
}

PairSet PairSet::of(const SubRel& u)
{
    const int n = static_cast<int>(u.labels().size());
    PairSet p(n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (u.contains(x, y))
                p.insert(x, y);
    return p;
}

SubRel meet(const SubRel& u, const SubRel& v)
{
    require_same_parent(u, v);
    const auto& lu = u.labels();
    const auto& lv = v.labels();
    const int n = static_cast<int>(lu.size());
    std::map<std::pair<int, int>, int> key;
    std::vector<int> labels(n, -1);
    for (int x = 0; x < n; ++x) {
        if (lu[x] < 0 || lv[x] < 0)
            continue;
        auto it = key.emplace(std::make_pair(lu[x], lv[x]), static_cast<int>(key.size())).first;
        labels[x] = it->second;
    }
    return SubRel(u.parent_ptr(), std::move(labels));
}

SubRel join(const SubRel& u, const SubRel& v)
{
    require_same_parent(u, v);
    const int n = static_cast<int>(u.labels().size());
    UnionFind uf(n);
    for (const SubRel* s : {&u, &v}) {
        std::map<int, int> rep;
        for (int x = 0; x < n; ++x) {
            const int l = s->labels()[x];
            if (l < 0)
                continue;
            auto [it, fresh] = rep.emplace(l, x);
            if (!fresh)
                uf.unite(x, it->second);
        }
    }
    std::vector<int> labels(n, -1);
    for (int x = 0; x < n; ++x)
        if (u.in_domain(x) || v.in_domain(x))
            labels[x] = uf.find(x);
    return SubRel(u.parent_ptr(), std::move(labels));
}

PairSet relprod(const SubRel& u, const SubRel& v)
{
    require_same_parent(u, v);
    const int n = static_cast<int>(u.labels().size());
    PairSet p(n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (!u.contains(x, y))
                continue;
            for (int z = 0; z < n; ++z)
                if (v.contains(y, z))
                    p.insert(x, z);
        }
    return p;
}

bool commute(const SubRel& u, const SubRel& v)
{
    return relprod(u, v) == relprod(v, u);
}

namespace {

void enumerate_rec(int x, const FinEquivRel& parent, std::vector<int>& labels, std::vector<int>& label_class,
                   const std::shared_ptr<const FinEquivRel>& ptr, std::vector<SubRel>& out)
{
    const int n = parent.size();
    if (x == n) {
        out.emplace_back(ptr, labels);
        return;
    }
    labels[x] = -1;
    enumerate_rec(x + 1, parent, labels, label_class, ptr, out);
    const int used = static_cast<int>(label_class.size());
    for (int l = 0; l < used; ++l) {
        if (label_class[l] != parent.class_of(x))
            continue;
        labels[x] = l;
        enumerate_rec(x + 1, parent, labels, label_class, ptr, out);
    }
    labels[x] = used;
    label_class.push_back(parent.class_of(x));
    enumerate_rec(x + 1, parent, labels, label_class, ptr, out);
    label_class.pop_back();
    labels[x] = -1;
}

} // namespace

std::vector<SubRel> enumerate_omega(std::shared_ptr<const FinEquivRel> parent)
{
    if (parent->size() > kMaxExplicitPoints)
        throw InputError("explicit enumeration of sub-relations is limited to " + std::to_string(kMaxExplicitPoints) +
                         " points; use a generated sublattice");
    std::vector<SubRel> out;
    std::vector<int> labels(parent->size(), -1);
    std::vector<int> label_class;
    enumerate_rec(0, *parent, labels, label_class, parent, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<SubRel> generated_sublattice(const std::vector<SubRel>& generators, std::size_t max_size)
{
    if (generators.empty())
        throw InputError("generated sublattice needs at least one generator");
    const auto& parent = generators.front().parent_ptr();
    std::set<SubRel> seen{SubRel::empty(parent), SubRel::full(parent)};
    for (const auto& g : generators) {
        require_same_parent(g, generators.front());
        seen.insert(g);
    }
    std::vector<SubRel> all(seen.begin(), seen.end());
    std::size_t done = 0;
    // Each new element is combined with every element present before it.
    while (done < all.size()) {
        const std::size_t limit = all.size();
        for (std::size_t i = done; i < limit; ++i)
            for (std::size_t j = 0; j < limit; ++j)
                for (const SubRel& c : {meet(all[i], all[j]), join(all[i], all[j])})
                    if (seen.insert(c).second) {
                        all.push_back(c);
                        if (all.size() > max_size)
                            throw InputError("generated sublattice exceeds " + std::to_string(max_size) + " elements");
                    }
        done = limit;
    }
    std::sort(all.begin(), all.end());
    return all;
}

int OmegaTables::index_of(const SubRel& u) const
{
    auto it = std::lower_bound(elements.begin(), elements.end(), u);
    if (it == elements.end() || !(*it == u))
        return -1;
    return static_cast<int>(it - elements.begin());
}

OmegaTables omega_tables(std::vector<SubRel> elements)
{
    OmegaTables t;
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    t.elements = std::move(elements);
    const int n = static_cast<int>(t.elements.size());
    t.meet.assign(static_cast<std::size_t>(n) * n, -1);
    t.join.assign(static_cast<std::size_t>(n) * n, -1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int m = t.index_of(meet(t.elements[i], t.elements[j]));
            const int k = t.index_of(join(t.elements[i], t.elements[j]));
            if (m < 0 || k < 0)
                throw InputError("family of sub-relations is not closed under meet and join");
            t.meet[static_cast<std::size_t>(i) * n + j] = m;
            t.join[static_cast<std::size_t>(i) * n + j] = k;
        }
    return t;
}

OmegaLawReport omega_laws(const OmegaTables& t)
{
    OmegaLawReport r;
    const int n = static_cast<int>(t.elements.size());
    r.elements = n;
    auto M = [&](int a, int b) { return t.meet[static_cast<std::size_t>(a) * n + b]; };
    auto J = [&](int a, int b) { return t.join[static_cast<std::size_t>(a) * n + b]; };

    std::vector<PairSet> sets;
    sets.reserve(n);
    for (const auto& u : t.elements) {
        sets.push_back(PairSet::of(u));
        if (!(relprod(u, u) == sets.back()))
            ++r.idempotence_failures;
    }

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (M(a, J(a, b)) != a || J(a, M(a, b)) != a)
                ++r.lattice_law_failures;
            if (M(a, b) != M(b, a) || J(a, b) != J(b, a))
                ++r.lattice_law_failures;
            for (int c = 0; c < n; ++c)
                if (M(M(a, b), c) != M(a, M(b, c)) || J(J(a, b), c) != J(a, J(b, c)))
                    ++r.lattice_law_failures;
        }

    r.all_commute = true;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const PairSet uv = relprod(t.elements[a], t.elements[b]);
            const PairSet vu = relprod(t.elements[b], t.elements[a]);
            const bool comm = uv == vu;
            const bool join_is_product = sets[J(a, b)] == uv;
            if (join_is_product && !comm)
                ++r.forward_failures;
            if (comm && !join_is_product) {
                ++r.reverse_failures;
                if (!r.reverse_witness)
                    r.reverse_witness = PairWitness{t.elements[a], t.elements[b]};
            }
            if (!comm && r.all_commute) {
                r.all_commute = false;
                r.non_commuting_witness = PairWitness{t.elements[a], t.elements[b]};
            }
        }

    const kernels::LatticeTables lt{n, t.meet, t.join};
    r.distributivity_failures = static_cast<int>(kernels::distributivity_failures_omp(lt));
    r.distributive_iff_commute = (r.distributivity_failures == 0) == r.all_commute;
    return r;
}

const Matrix& ElementaryMeasure::operator()(const SubRel& u) const
{
    for (std::size_t i = 0; i < domain.size(); ++i)
        if (domain[i] == u)
            return values[i];
    throw InputError("sub-relation " + u.to_string() + " is outside the measure's domain");
}

double ElementaryAxiomReport::max_residual() const
{
    return std::max({empty_residual, full_residual, meet_residual, disjoint_pair_residual, disjoint_family_residual,
                     idempotent_residual, selfadjoint_residual});
}

ElementaryAxiomReport elementary_axioms(const ElementaryMeasure& e, const Tolerance& tol)
{
    ElementaryAxiomReport r;
    const int n = static_cast<int>(e.domain.size());
    const int h = e.hilbert_dim;
    const Matrix id = identity(h);

    std::vector<Matrix> ranges(n);
    for (int i = 0; i < n; ++i) {
        const Matrix& v = e.values[i];
        r.idempotent_residual = std::max(r.idempotent_residual, (v * v - v).norm());
        if (e.flavor == ElementaryMeasure::Flavor::orthogonal)
            r.selfadjoint_residual = std::max(r.selfadjoint_residual, (v - v.adjoint()).norm());
        ranges[i] = projector(range_basis(v, tol), tol);
    }

    auto find = [&](const SubRel& u) {
        for (int i = 0; i < n; ++i)
            if (e.domain[i] == u)
                return i;
        return -1;
    };
    const int zero = find(SubRel::empty(e.parent));
    const int one = find(SubRel::full(e.parent));
    if (zero < 0 || one < 0)
        throw InputError("measure domain must contain the empty and the full sub-relation");
    r.empty_residual = e.values[zero].norm();
    r.full_residual = (e.values[one] - id).norm();

    // Meet tables for the domain; elements outside the domain are an input error.
    std::vector<int> mt(static_cast<std::size_t>(n) * n), jt(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            mt[i * n + j] = find(meet(e.domain[i], e.domain[j]));
            jt[i * n + j] = find(join(e.domain[i], e.domain[j]));
            if (mt[i * n + j] < 0 || jt[i * n + j] < 0)
                throw InputError("measure domain is not closed under meet and join");
        }

    struct Row {
        double meet = 0, pair = 0, mono = 0;
        int pairs = 0;
    };
    const auto rows = kernels::parallel_map<Row>(n, [&](std::size_t ii) {
        const int i = static_cast<int>(ii);
        Row row;
        for (int j = i; j < n; ++j) {
            const int m = mt[i * n + j];
            const Matrix pm = projection_meet(ranges[i], ranges[j], tol);
            row.meet = std::max(row.meet, (ranges[m] - pm).norm());
            ++row.pairs;
            if (m == zero) {
                const Matrix pj = projection_join(ranges[i], ranges[j], tol);
                row.pair = std::max(row.pair, (ranges[jt[i * n + j]] - pj).norm());
            }
        }
        for (int j = 0; j < n; ++j)
            if (e.domain[i].subset_of(e.domain[j]))
                row.mono = std::max(row.mono, ((id - ranges[j]) * ranges[i]).norm());
        return row;
    });
    for (const auto& row : rows) {
        r.meet_residual = std::max(r.meet_residual, row.meet);
        r.disjoint_pair_residual = std::max(r.disjoint_pair_residual, row.pair);
        r.monotonicity_residual = std::max(r.monotonicity_residual, row.mono);
        r.pairs_checked += row.pairs;
    }

    auto family_residual = [&](const std::vector<int>& fam) {
        int u = zero;
        Matrix pj = Matrix::Zero(h, h);
        for (int k : fam) {
            u = jt[u * n + k];
            pj = projection_join(pj, ranges[k], tol);
        }
        ++r.families_checked;
        return (ranges[u] - pj).norm();
    };
    // Pairwise-disjoint triples on small domains.
    if (n <= 64)
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                if (mt[a * n + b] != zero || a == zero || b == zero)
                    continue;
                for (int c = b + 1; c < n; ++c)
                    if (c != zero && mt[a * n + c] == zero && mt[b * n + c] == zero)
                        r.disjoint_family_residual = std::max(r.disjoint_family_residual, family_residual({a, b, c}));
            }
    // The atoms: minimal non-empty elements, which are pairwise disjoint.
    std::vector<int> atoms;
    for (int i = 0; i < n; ++i) {
        if (i == zero)
            continue;
        bool minimal = true;
        for (int j = 0; j < n && minimal; ++j)
            if (j != zero && j != i && e.domain[j].subset_of(e.domain[i]))
                minimal = false;
        if (minimal)
            atoms.push_back(i);
    }
    if (atoms.size() > 1)
        r.disjoint_family_residual = std::max(r.disjoint_family_residual, family_residual(atoms));
    return r;
}

} // namespace ncdual
