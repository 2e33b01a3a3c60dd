#include "ncdual/oml.hpp"

#include <algorithm>
#include <bit>

#include "ncdual/errors.hpp"
#include "ncdual/kernels.hpp"

namespace ncdual {

namespace {

std::string pair_text(int a, int b)
{
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

FiniteLattice from_order(int n, const std::vector<std::vector<bool>>& leq, std::vector<int> comp, std::string name)
{
    // Meet is the largest common lower bound, join the smallest upper bound.
    FiniteLattice l;
    l.size = n;
    l.meet.assign(static_cast<std::size_t>(n) * n, -1);
    l.join.assign(static_cast<std::size_t>(n) * n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            for (int x = 0; x < n; ++x) {
                if (leq[x][a] && leq[x][b]) {
                    bool top = true;
                    for (int y = 0; y < n && top; ++y)
                        if (leq[y][a] && leq[y][b] && !leq[y][x])
                            top = false;
                    if (top)
                        l.meet[a * n + b] = x;
                }
                if (leq[a][x] && leq[b][x]) {
                    bool bottom = true;
                    for (int y = 0; y < n && bottom; ++y)
                        if (leq[a][y] && leq[b][y] && !leq[x][y])
                            bottom = false;
                    if (bottom)
                        l.join[a * n + b] = x;
                }
            }
        }
    l.complement = std::move(comp);
    for (int x = 0; x < n; ++x) {
        bool is_zero = true, is_one = true;
        for (int y = 0; y < n; ++y) {
            is_zero = is_zero && leq[x][y];
            is_one = is_one && leq[y][x];
        }
        if (is_zero)
            l.zero = x;
        if (is_one)
            l.one = x;
    }
    l.name = std::move(name);
    return l;
}

} // namespace

void FiniteLattice::validate() const
{
    if (size < 1)
        throw InputError("lattice size must be positive");
    const std::size_t n2 = static_cast<std::size_t>(size) * size;
    if (meet.size() != n2)
        throw InputError("meet must have size*size = " + std::to_string(n2) + " entries");
    if (join.size() != n2)
        throw InputError("join must have size*size = " + std::to_string(n2) + " entries");
    if (complement.size() != static_cast<std::size_t>(size))
        throw InputError("complement must have size = " + std::to_string(size) + " entries");
    auto in_range = [&](int v) { return v >= 0 && v < size; };
    for (std::size_t k = 0; k < n2; ++k) {
        if (!in_range(meet[k]))
            throw InputError("meet entry " + std::to_string(k) + " out of range");
        if (!in_range(join[k]))
            throw InputError("join entry " + std::to_string(k) + " out of range");
    }
    for (int a = 0; a < size; ++a)
        if (!in_range(complement[a]))
            throw InputError("complement entry " + std::to_string(a) + " out of range");
    if (!in_range(zero) || !in_range(one))
        throw InputError("zero and one must be valid indices");
    for (int a = 0; a < size; ++a) {
        if (m(a, a) != a || j(a, a) != a)
            throw InputError("lattice not idempotent at " + std::to_string(a));
        if (m(zero, a) != zero || j(one, a) != one || j(zero, a) != a || m(one, a) != a)
            throw InputError("zero/one are not bounds at " + std::to_string(a));
        for (int b = 0; b < size; ++b) {
            if (m(a, b) != m(b, a) || j(a, b) != j(b, a))
                throw InputError("lattice not commutative at " + pair_text(a, b));
            if (m(a, j(a, b)) != a || j(a, m(a, b)) != a)
                throw InputError("lattice not absorptive at " + pair_text(a, b));
            for (int c = 0; c < size; ++c)
                if (m(m(a, b), c) != m(a, m(b, c)) || j(j(a, b), c) != j(a, j(b, c)))
                    throw InputError("lattice not associative at (" + std::to_string(a) + "," + std::to_string(b) +
                                     "," + std::to_string(c) + ")");
        }
    }
}

OmlReport is_oml(const FiniteLattice& l)
{
    OmlReport r;
    const int n = l.size;
    for (int s = 0; s < n; ++s) {
        if (l.c(l.c(s)) != s)
            r.involution_failures.push_back(s);
        if (l.j(s, l.c(s)) != l.one || l.m(s, l.c(s)) != l.zero)
            r.complement_failures.push_back(s);
        for (int t = 0; t < n; ++t) {
            if (!l.leq(s, t))
                continue;
            if (!l.leq(l.c(t), l.c(s)))
                r.order_reversal_failures.emplace_back(s, t);
            if (l.j(s, l.m(l.c(s), t)) != t)
                r.orthomodular_failures.emplace_back(s, t);
        }
    }
    return r;
}

int dot_meet(const FiniteLattice& l, int a, int b)
{
    return l.m(l.j(a, l.c(b)), b);
}

bool is_boolean(const FiniteLattice& l)
{
    for (int a = 0; a < l.size; ++a)
        for (int b = a + 1; b < l.size; ++b)
            if (dot_meet(l, a, b) != dot_meet(l, b, a))
                return false;
    return true;
}

bool is_distributive(const FiniteLattice& l)
{
    const kernels::LatticeTables t{l.size, l.meet, l.join};
    return kernels::distributivity_failures_omp(t) == 0;
}

StoneReport stone(const FiniteLattice& l)
{
    if (!is_boolean(l))
        throw NotBoolean("lattice " + (l.name.empty() ? std::string("input") : l.name) + " is not Boolean");
    StoneReport r;
    const int n = l.size;
    for (int a = 0; a < n; ++a) {
        if (a == l.zero)
            continue;
        bool atom = true;
        for (int b = 0; b < n && atom; ++b)
            if (b != l.zero && b != a && l.leq(b, a))
                atom = false;
        if (atom)
            r.atoms.push_back(a);
    }
    if (r.atoms.size() > 31)
        throw InputError("too many atoms for the set representation");
    r.image.assign(n, 0u);
    for (int a = 0; a < n; ++a)
        for (std::size_t k = 0; k < r.atoms.size(); ++k)
            if (l.leq(r.atoms[k], a))
                r.image[a] |= 1u << k;
    const unsigned full = (r.atoms.size() == 32) ? ~0u : ((1u << r.atoms.size()) - 1u);
    std::vector<unsigned> sorted = r.image;
    std::sort(sorted.begin(), sorted.end());
    r.bijective = static_cast<std::size_t>(n) == (std::size_t{1} << r.atoms.size()) &&
                  std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    r.preserves_meet = r.preserves_join = r.preserves_complement = true;
    for (int a = 0; a < n; ++a) {
        if (r.image[l.c(a)] != (full & ~r.image[a]))
            r.preserves_complement = false;
        for (int b = 0; b < n; ++b) {
            if (r.image[l.m(a, b)] != (r.image[a] & r.image[b]))
                r.preserves_meet = false;
            if (r.image[l.j(a, b)] != (r.image[a] | r.image[b]))
                r.preserves_join = false;
        }
    }
    return r;
}

FiniteLattice boolean_algebra(int k)
{
    if (k < 0 || k > 10)
        throw InputError("boolean algebra rank must be in [0, 10]");
    const int n = 1 << k;
    FiniteLattice l;
    l.size = n;
    l.meet.resize(static_cast<std::size_t>(n) * n);
    l.join.resize(static_cast<std::size_t>(n) * n);
    l.complement.resize(n);
    for (int a = 0; a < n; ++a) {
        l.complement[a] = (n - 1) & ~a;
        for (int b = 0; b < n; ++b) {
            l.meet[a * n + b] = a & b;
            l.join[a * n + b] = a | b;
        }
    }
    l.zero = 0;
    l.one = n - 1;
    l.name = "2^" + std::to_string(k);
    return l;
}

FiniteLattice mo2()
{
    const int n = 6;
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (int x = 0; x < n; ++x) {
        leq[x][x] = true;
        leq[0][x] = true;
        leq[x][5] = true;
    }
    return from_order(n, leq, {5, 2, 1, 4, 3, 0}, "MO2");
}

FiniteLattice pentagon(int variant)
{
    // 0:0 1:a 2:b 3:c 4:1
    const int n = 5;
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (int x = 0; x < n; ++x) {
        leq[x][x] = true;
        leq[0][x] = true;
        leq[x][4] = true;
    }
    leq[1][2] = true;
    const int cc = variant == 0 ? 1 : 2;
    return from_order(n, leq, {4, 3, 3, cc, 0}, "N5/" + std::to_string(variant));
}

ProjectionLattice projection_lattice(const std::vector<Matrix>& generators, const Tolerance& tol, int max_size)
{
    if (generators.empty())
        throw InputError("projection lattice needs at least one generator");
    const int dim = static_cast<int>(generators.front().rows());
    ProjectionLattice out;
    auto& el = out.elements;
    auto find = [&](const Matrix& p) {
        for (std::size_t i = 0; i < el.size(); ++i)
            if ((el[i] - p).norm() <= tol.eps_verify * 100)
                return static_cast<int>(i);
        return -1;
    };
    auto add = [&](const Matrix& p) {
        if (find(p) >= 0)
            return false;
        if (static_cast<int>(el.size()) >= max_size)
            throw InputError("projection lattice exceeds " + std::to_string(max_size) + " elements");
        el.push_back(p);
        return true;
    };
    add(Matrix::Zero(dim, dim));
    add(identity(dim));
    for (const auto& g : generators) {
        require_square_finite(g, "projection");
        if (g.rows() != dim)
            throw DimensionMismatch("projections of different sizes");
        if ((g * g - g).norm() > tol.eps_verify || (g - g.adjoint()).norm() > tol.eps_verify)
            throw InputError("generator is not an orthogonal projection");
        add(g);
    }
    for (bool grew = true; grew;) {
        grew = false;
        const std::size_t n = el.size();
        for (std::size_t i = 0; i < n; ++i) {
            grew |= add(identity(dim) - el[i]);
            for (std::size_t k = i + 1; k < n; ++k) {
                grew |= add(projection_meet(el[i], el[k], tol));
                grew |= add(projection_join(el[i], el[k], tol));
            }
        }
    }
    const int n = static_cast<int>(el.size());
    FiniteLattice& l = out.lattice;
    l.size = n;
    l.meet.resize(static_cast<std::size_t>(n) * n);
    l.join.resize(static_cast<std::size_t>(n) * n);
    l.complement.resize(n);
    for (int a = 0; a < n; ++a) {
        l.complement[a] = find(identity(dim) - el[a]);
        for (int b = 0; b < n; ++b) {
            l.meet[a * n + b] = find(projection_meet(el[a], el[b], tol));
            l.join[a * n + b] = find(projection_join(el[a], el[b], tol));
        }
    }
    l.zero = 0;
    l.one = 1;
    l.name = "projections";
    return out;
}

} // namespace ncdual
