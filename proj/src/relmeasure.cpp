#include "ncdual/relmeasure.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ncdual/errors.hpp"
#include "ncdual/states.hpp"

namespace ncdual {

void RelMeasure::validate() const
{
    const int n = relation.size();
    if (weights.rows() != n || weights.cols() != n)
        throw InputError("measure weights must be " + std::to_string(n) + "x" + std::to_string(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (!relation.contains(x, y) && weights(x, y) != Complex(0.0))
                throw InputError("measure has mass on (" + relation.points()[x] + ", " + relation.points()[y] +
                                 ") outside the relation");
}

RelMeasure zero_measure(const FinEquivRel& r)
{
    return {r, Matrix::Zero(r.size(), r.size())};
}

RelMeasure delta_measure(const FinEquivRel& r)
{
    return {r, Matrix::Identity(r.size(), r.size())};
}

RelMeasure point_mass(const FinEquivRel& r, int x, int y, Complex w)
{
    if (!r.contains(x, y))
        throw InputError("point mass outside the relation");
    RelMeasure m = zero_measure(r);
    m.weights(x, y) = w;
    return m;
}

RelMeasure random_measure(const FinEquivRel& r, Rng& rng)
{
    std::normal_distribution<double> g;
    RelMeasure m = zero_measure(r);
    for (const auto& [x, y] : r.pairs())
        m.weights(x, y) = Complex(g(rng), g(rng));
    return m;
}

RelMeasure hat_measure(const Matrix& a, const FiniteCStar& alg, const Tolerance& tol)
{
    if (a.rows() != alg.ambient_dim || a.cols() != alg.ambient_dim)
        throw DimensionMismatch("element is not " + std::to_string(alg.ambient_dim) + "x" +
                                std::to_string(alg.ambient_dim));
    const double res = alg.membership_residual(a);
    if (!(res <= tol.eps_verify))
        throw NotInAlgebra("element lies at relative distance " + std::to_string(res) + " from the algebra");

    RelMeasure m = zero_measure(block_relation(alg));
    int offset = 0;
    for (std::size_t c = 0; c < alg.blocks.size(); ++c) {
        const Matrix b = alg.block_matrix(c, a);
        const int n = alg.blocks[c].block_dim;
        m.weights.block(offset, offset, n, n) = b.transpose();
        offset += n;
    }
    return m;
}

RelMeasure convolve(const RelMeasure& m1, const RelMeasure& m2)
{
    if (!(m1.relation == m2.relation))
        throw RelationMismatch("convolution of measures on different relations");
    RelMeasure out{m1.relation, m2.weights * m1.weights};
    // Products of measures on R stay on R; clear rounding residue anyway.
    for (int x = 0; x < out.relation.size(); ++x)
        for (int z = 0; z < out.relation.size(); ++z)
            if (!out.relation.contains(x, z))
                out.weights(x, z) = 0.0;
    return out;
}

RelMeasure adjoint(const RelMeasure& m)
{
    return {m.relation, m.weights.adjoint()};
}

Matrix measure_matrix(const RelMeasure& m)
{
    return m.weights.transpose();
}

double block_norm(const RelMeasure& m)
{
    double best = 0.0;
    for (const auto& cls : m.relation.classes()) {
        const int k = static_cast<int>(cls.size());
        Matrix b(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                b(i, j) = m.weights(cls[i], cls[j]);
        best = std::max(best, op_norm(b));
    }
    return best;
}

double AlgebraRoundtripReport::max_residual() const
{
    return std::max({linearity_residual, multiplicativity_residual, star_residual, isometry_residual});
}

bool AlgebraRoundtripReport::passed(double bound) const
{
    return injective && surjective && dimension_match && max_residual() <= bound;
}

AlgebraRoundtripReport duality_roundtrip_algebra(const FiniteCStar& alg, const Tolerance& tol, std::uint64_t seed)
{
    AlgebraRoundtripReport rep;
    rep.algebra_dimension = alg.dimension();
    for (const auto& b : alg.blocks)
        rep.block_dims.push_back(b.block_dim);

    const int d = alg.dimension();
    std::vector<RelMeasure> hats;
    hats.reserve(d);
    for (const auto& b : alg.basis)
        hats.push_back(hat_measure(b, alg, tol));
    const FinEquivRel& rel = hats.front().relation;
    rep.relation_pairs = static_cast<int>(rel.pairs().size());

    auto dist = [](const RelMeasure& a, const RelMeasure& b) { return (a.weights - b.weights).norm(); };

    Rng rng(seed);
    std::normal_distribution<double> g;
    for (int i = 0; i < d; ++i) {
        const int j = (i + 1) % d;
        const Complex al(g(rng), g(rng)), be(g(rng), g(rng));
        RelMeasure lin{rel, al * hats[i].weights + be * hats[j].weights};
        const Matrix x = al * alg.basis[i] + be * alg.basis[j];
        rep.linearity_residual = std::max(rep.linearity_residual, dist(hat_measure(x, alg, tol), lin));
        rep.star_residual = std::max(rep.star_residual, dist(hat_measure(adjoint(alg.basis[i]), alg, tol), adjoint(hats[i])));
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const Matrix p = alg.basis[i] * alg.basis[j];
            rep.multiplicativity_residual =
                std::max(rep.multiplicativity_residual, dist(hat_measure(p, alg, tol), convolve(hats[i], hats[j])));
        }
    // Isometry on basis elements and a few random elements.
    std::vector<Matrix> probes(alg.basis.begin(), alg.basis.end());
    for (int t = 0; t < 4; ++t) {
        Vector c(d);
        for (int i = 0; i < d; ++i)
            c(i) = Complex(g(rng), g(rng));
        probes.push_back(alg.element(c));
    }
    for (const auto& x : probes) {
        const double nx = op_norm(x);
        const double nh = block_norm(hat_measure(x, alg, tol));
        rep.isometry_residual = std::max(rep.isometry_residual, std::abs(nx - nh) / std::max(1.0, nx));
    }

    Matrix stacked(rel.size() * rel.size(), d);
    for (int i = 0; i < d; ++i)
        stacked.col(i) = vec(hats[i].weights);
    const int r = rank(stacked, tol);
    rep.injective = r == d;
    rep.surjective = r == rep.relation_pairs;
    int sq = 0;
    for (int n : rep.block_dims)
        sq += n * n;
    rep.dimension_match = d == sq && sq == rep.relation_pairs;
    rep.identification = "continuous functions and measures on a finite relation carry the same data; "
                         "the operator of a measure is identified with the measure itself";
    return rep;
}

RelationRoundtripReport duality_roundtrip_relation(const FinEquivRel& r, const Tolerance& tol, std::uint64_t seed)
{
    RelationRoundtripReport rep;
    rep.expected_sizes = r.class_sizes();
    const int n = r.size();

    std::vector<Matrix> gens;
    for (const auto& [x, y] : r.pairs())
        gens.push_back(measure_matrix(point_mass(r, x, y)));

    Rng rng(seed);
    for (int t = 0; t < 4; ++t) {
        const RelMeasure a = random_measure(r, rng), b = random_measure(r, rng);
        const double res = (measure_matrix(convolve(a, b)) - measure_matrix(a) * measure_matrix(b)).norm();
        rep.convolution_residual = std::max(rep.convolution_residual, res);
    }

    auto alg = std::make_shared<const FiniteCStar>(generate(n, gens, tol, seed));
    rep.algebra_dimension = alg->dimension();
    const FinEquivRel rec = relation(alg, tol, seed + 1);
    rep.recovered_sizes = rec.class_sizes();

    // Recovered point i belongs to block b(i); each block's central projection
    // is supported on exactly one original class.
    const auto cls = r.classes();
    rep.matching.assign(cls.size(), -1);
    bool ok = rep.expected_sizes == rep.recovered_sizes;
    for (std::size_t c = 0; c < alg->blocks.size(); ++c) {
        const Matrix& p = alg->blocks[c].central_projection;
        int owner = -1;
        for (std::size_t k = 0; k < cls.size(); ++k) {
            double w = 0.0;
            for (int x : cls[k])
                w += std::abs(p(x, x));
            if (w > 0.5) {
                if (owner >= 0)
                    ok = false;
                owner = static_cast<int>(k);
            }
        }
        if (owner < 0 || rep.matching[owner] >= 0 ||
            static_cast<int>(cls[owner].size()) != alg->blocks[c].block_dim) {
            ok = false;
            continue;
        }
        rep.matching[owner] = rec.class_of(
            rec.index_of("b" + std::to_string(c) + ".e0"));
    }
    for (int m : rep.matching)
        ok = ok && m >= 0;
    rep.matched = ok;
    return rep;
}

} // namespace ncdual
