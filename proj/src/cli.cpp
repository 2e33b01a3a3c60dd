#include "ncdual/cli.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <sstream>

#include "ncdual/acceptance.hpp"
#include "ncdual/algebra.hpp"
#include "ncdual/duality.hpp"
#include "ncdual/errors.hpp"
#include "ncdual/oml.hpp"
#include "ncdual/omega.hpp"
#include "ncdual/relmeasure.hpp"
#include "ncdual/spectral.hpp"
#include "ncdual/states.hpp"

namespace ncdual::cli {

using io::Json;

namespace {

// Raised for bad invocations (missing seed, unknown command).
struct UsageError : InputError {
    using InputError::InputError;
};

// Collects residual entries and remembers whether all of them passed.
struct Checker {
    bool ok = true;

    Json operator()(double value, double tolerance)
    {
        const bool pass = std::isfinite(value) && value <= tolerance;
        ok = ok && pass;
        return Json{{"value", value}, {"tolerance", tolerance}, {"ok", pass}};
    }

    Json flag(bool value)
    {
        ok = ok && value;
        return value;
    }
};

std::uint64_t need_seed(const RunConfig& cfg)
{
    if (!cfg.seed)
        throw UsageError("command " + cfg.command + " is randomized and requires --seed");
    return *cfg.seed;
}

void need_inputs(const RunConfig& cfg)
{
    if (cfg.inputs.empty())
        throw UsageError("command " + cfg.command + " needs at least one --input");
}

Json sizes_json(const std::vector<int>& v)
{
    Json a = Json::array();
    for (int x : v)
        a.push_back(x);
    return a;
}

Json decompose_one(const Matrix& a, const Tolerance& tol, Checker& chk)
{
    const SpectralFamily f = spectral_family(a, tol);
    const auto& d = f.decomposition;
    const int n = d.dim();
    Json j;
    j["dim"] = n;
    Json blocks = Json::array();
    for (const auto& b : d.blocks)
        blocks.push_back({{"eigenvalue", io::complex_json(b.eigenvalue)}, {"size", b.size}, {"position", b.position}});
    j["blocks"] = blocks;
    j["projector_norm"] = d.projector_norm;
    const double bound = tol.eps_verify * a.norm();
    j["jordan_residual"] = chk(d.residual, bound);
    j["reconstruction_residual"] = chk((a - reconstruct(f)).norm(), bound);

    Matrix sum = Matrix::Zero(n, n);
    double nil = 0.0;
    for (std::size_t b = 0; b < d.blocks.size(); ++b) {
        sum += f.block_idempotent(static_cast<int>(b));
        Matrix p = identity(n);
        for (int k = 0; k < d.blocks[b].size; ++k)
            p = f.shifts[b] * p;
        nil = std::max(nil, op_norm(p) / std::max(1.0, std::pow(op_norm(f.shifts[b]), d.blocks[b].size)));
    }
    j["partition_of_unity_residual"] = chk((sum - identity(n)).norm(), tol.eps_verify);
    j["shift_nilpotency_residual"] = chk(nil, tol.eps_verify);
    if (f.lattice.size() <= 256) {
        const auto ax = elementary_axioms(f.orthogonal_measure(), tol);
        j["orthogonal_axioms_residual"] = chk(ax.max_residual(), tol.eps_verify);
        j["orthogonal_monotonicity_residual"] = chk(ax.monotonicity_residual, tol.eps_verify);
    } else {
        j["orthogonal_axioms_residual"] = "skipped: lattice has more than 256 elements";
    }
    return j;
}

Json cmd_decompose(const RunConfig& cfg, Checker& chk)
{
    need_inputs(cfg);
    Json out = Json::array();
    for (const auto& path : cfg.inputs) {
        Json j{{"input", path}};
        j.update(decompose_one(io::parse_matrix(io::read_json(path)), cfg.tol, chk));
        out.push_back(j);
    }
    return out;
}

Json cmd_funcalc(const RunConfig& cfg, Checker& chk)
{
    need_inputs(cfg);
    const AnalyticFunction fn = AnalyticFunction::parse(cfg.function);
    Json out = Json::array();
    for (const auto& path : cfg.inputs) {
        const Matrix a = io::parse_matrix(io::read_json(path));
        const SpectralFamily f = spectral_family(a, cfg.tol);
        const Matrix fa = apply_measure(holomorphic(fn, f), f);
        Json j{{"input", path}, {"function", fn.name()}};
        try {
            const Matrix r = riesz(fn, a, default_contours(f), cfg.tol);
            j["riesz_residual"] = chk((fa - r).norm() / std::max(1.0, fa.norm()), cfg.tol.eps_verify);
        } catch (const ContourTooClose& e) {
            j["riesz_residual"] = chk(INFINITY, cfg.tol.eps_verify);
            j["riesz_error"] = e.what();
        }
        j["result"] = io::matrix_json(fa);
        out.push_back(j);
    }
    return out;
}

Json cmd_invsub(const RunConfig& cfg, Checker& chk)
{
    need_inputs(cfg);
    Json out = Json::array();
    for (const auto& path : cfg.inputs) {
        const Matrix a = io::parse_matrix(io::read_json(path));
        const Matrix p = invariant_subspace(a, cfg.tol);
        const int n = static_cast<int>(a.rows());
        const int r = rank(p, cfg.tol);
        Json j{{"input", path}, {"dim", n}, {"rank", r}};
        j["nontrivial"] = chk.flag(r > 0 && r < n);
        j["invariance_residual"] = chk(((identity(n) - p) * a * p).norm(), cfg.tol.eps_verify * a.norm());
        j["idempotent_residual"] = chk((p * p - p).norm(), cfg.tol.eps_verify);
        j["selfadjoint_residual"] = chk((p - p.adjoint()).norm(), cfg.tol.eps_verify);
        j["projection"] = io::matrix_json(p);
        out.push_back(j);
    }
    return out;
}

Json algebra_report(const FiniteCStar& alg, const Tolerance& tol, std::uint64_t seed, Checker& chk)
{
    Json j;
    j["ambient_dim"] = alg.ambient_dim;
    j["dimension"] = alg.dimension();
    Json blocks = Json::array();
    for (const auto& b : alg.blocks)
        blocks.push_back({{"block_dim", b.block_dim}, {"multiplicity", b.multiplicity}});
    j["blocks"] = blocks;
    const int z = center(alg, tol).dimension;
    j["center_dimension"] = z;
    j["center_matches_blocks"] = chk.flag(z == static_cast<int>(alg.blocks.size()));
    const bool comm = is_commutative(alg, tol);
    j["commutative"] = comm;

    auto shared = std::make_shared<const FiniteCStar>(alg);
    const FinEquivRel r = relation(shared, tol, seed);
    j["relation"] = io::relation_json(r);
    j["relation_class_sizes"] = sizes_json(r.class_sizes());
    j["commutative_iff_singletons"] = chk.flag(comm == (r.num_classes() == r.size()));

    const auto rt = duality_roundtrip_algebra(alg, tol, seed);
    Json round;
    round["relation_pairs"] = rt.relation_pairs;
    round["linearity_residual"] = chk(rt.linearity_residual, tol.eps_verify);
    round["multiplicativity_residual"] = chk(rt.multiplicativity_residual, tol.eps_verify);
    round["star_residual"] = chk(rt.star_residual, tol.eps_verify);
    round["isometry_residual"] = chk(rt.isometry_residual, tol.eps_verify);
    round["injective"] = chk.flag(rt.injective);
    round["surjective"] = chk.flag(rt.surjective);
    round["dimension_match"] = chk.flag(rt.dimension_match);
    round["identification"] = rt.identification;
    j["roundtrip"] = round;
    return j;
}

Json cmd_algebra(const RunConfig& cfg, Checker& chk)
{
    need_inputs(cfg);
    const std::uint64_t seed = need_seed(cfg);
    std::map<std::string, std::shared_ptr<const FiniteCStar>> cache;
    auto load = [&](const std::string& path) {
        auto it = cache.find(path);
        if (it != cache.end())
            return it->second;
        const auto in = io::parse_algebra(io::read_json(path));
        auto alg = std::make_shared<const FiniteCStar>(generate(in.ambient_dim, in.generators, cfg.tol, seed));
        cache.emplace(path, alg);
        return alg;
    };
    Json out = Json::array();
    for (const auto& path : cfg.inputs) {
        const Json doc = io::read_json(path);
        if (doc.is_object() && doc.contains("algebra")) {
            const auto in = io::parse_state(doc, io::parent_dir(path));
            const auto alg = load(in.algebra_path);
            if (in.values.size() != static_cast<std::size_t>(alg->dimension()))
                throw DimensionMismatch(path + ": state has " + std::to_string(in.values.size()) +
                                        " values, algebra dimension is " + std::to_string(alg->dimension()));
            State s{alg, in.values, path};
            Json j{{"input", path}, {"kind", "state"}, {"algebra", in.algebra_path}};
            try {
                s.validate(cfg.tol);
                const GnsRep g = gns(s, cfg.tol);
                const int c = commutant_dimension(g, cfg.tol);
                j["gns_dimension"] = g.rep_dim;
                j["commutant_dimension"] = c;
                j["pure"] = c == 1;
                double resid = 0.0;
                for (int k = 0; k < alg->dimension(); ++k)
                    resid = std::max(resid, std::abs(g.cyclic_vector.dot(g.rep_map[k] * g.cyclic_vector) -
                                                     s(alg->basis[k])));
                j["cyclic_vector_residual"] = chk(resid, cfg.tol.eps_verify);
            } catch (const DegenerateState& e) {
                j["state_error"] = e.what();
                chk.flag(false);
            }
            out.push_back(j);
        } else {
            Json j{{"input", path}, {"kind", "algebra"}};
            j.update(algebra_report(*load(path), cfg.tol, seed, chk));
            out.push_back(j);
        }
    }
    return out;
}

Json relation_roundtrip_json(const FinEquivRel& r, const Tolerance& tol, std::uint64_t seed, Checker& chk)
{
    const auto rt = duality_roundtrip_relation(r, tol, seed);
    Json j;
    j["expected_class_sizes"] = sizes_json(rt.expected_sizes);
    j["recovered_class_sizes"] = sizes_json(rt.recovered_sizes);
    j["algebra_dimension"] = rt.algebra_dimension;
    j["convolution_residual"] = chk(rt.convolution_residual, tol.eps_verify);
    j["matching"] = sizes_json(rt.matching);
    j["matched"] = chk.flag(rt.matched && rt.expected_sizes == rt.recovered_sizes);
    return j;
}

Json cmd_roundtrip(const RunConfig& cfg, Checker& chk)
{
    need_inputs(cfg);
    const std::uint64_t seed = cfg.seed.value_or(acceptance::kDefaultSeed);
    const Tolerance& tol = cfg.tol;
    Json out = Json::array();
    for (const auto& path : cfg.inputs) {
        const Json doc = io::read_json(path);
        Json j{{"input", path}};
        if (doc.is_object() && doc.contains("ambient_dim")) {
            const auto in = io::parse_algebra(doc);
            j["kind"] = "algebra";
            j.update(algebra_report(generate(in.ambient_dim, in.generators, tol, seed), tol, seed, chk));
        } else if (doc.is_object() && doc.contains("subset_pairs")) {
            const SubRel u = io::parse_subrel(doc);
            j["kind"] = "subrel";
            j["pairs"] = u.pair_count();
            j["domain_size"] = static_cast<int>(u.domain().size());
            j["subrel"] = u.to_string();
            // The sub-relation is itself an equivalence relation on its domain.
            const auto dom = u.domain();
            if (!dom.empty()) {
                std::vector<std::string> pts;
                std::vector<int> cls;
                for (int x : dom) {
                    pts.push_back(u.parent().points()[x]);
                    cls.push_back(u.labels()[x]);
                }
                j["roundtrip"] = relation_roundtrip_json(FinEquivRel(pts, cls), tol, seed, chk);
            }
            if (u.parent().size() <= kMaxExplicitPoints) {
                const auto laws = omega_laws(omega_tables(enumerate_omega(u.parent_ptr())));
                j["omega_size"] = laws.elements;
            }
        } else if (doc.is_object() && doc.contains("weights")) {
            const RelMeasure m = io::parse_measure(doc);
            j["kind"] = "measure";
            const Matrix t = measure_matrix(m);
            j["convolution_residual"] = chk((measure_matrix(convolve(m, m)) - t * t).norm(),
                                            tol.eps_verify * std::max(1.0, t.norm() * t.norm()));
            j["adjoint_residual"] = chk((measure_matrix(adjoint(m)) - t.adjoint()).norm(), tol.eps_verify);
            j["block_norm"] = block_norm(m);
            j["norm_residual"] = chk(std::abs(block_norm(m) - op_norm(t)), tol.eps_verify * std::max(1.0, op_norm(t)));
            j["roundtrip"] = relation_roundtrip_json(m.relation, tol, seed, chk);
        } else {
            const FinEquivRel r = io::parse_relation(doc);
            j["kind"] = "relation";
            j["relation"] = io::relation_json(r);
            j["roundtrip"] = relation_roundtrip_json(r, tol, seed, chk);
        }
        out.push_back(j);
    }
    return out;
}

Json comult_json(const ComultiplicationReport& r, Checker& chk, const Tolerance& tol)
{
    Json j;
    j["relation_pairs"] = r.relation_pairs;
    j["undefined_products"] = r.undefined_products;
    j["coassociativity_residual"] = chk(r.coassociativity_residual, tol.eps_verify);
    j["nondegenerate"] = r.nondegenerate;
    j["is_group"] = r.is_group;
    j["verdict_matches"] = chk.flag(r.verdict_matches);
    if (!r.note.empty())
        j["note"] = r.note;
    return j;
}

Json cmd_group(const RunConfig& cfg, Checker& chk)
{
    need_inputs(cfg);
    const std::uint64_t seed = need_seed(cfg);
    const Tolerance& tol = cfg.tol;
    Json out = Json::array();
    for (const auto& path : cfg.inputs) {
        const FiniteGroup g = io::parse_group(io::read_json(path));
        Json j{{"input", path}};
        j["group"] = io::group_json(g);
        j["abelian"] = g.is_abelian();
        const auto reps = irreps(g, seed, tol);
        std::vector<int> dims;
        int sq = 0;
        for (const auto& r : reps) {
            dims.push_back(r.dim);
            sq += r.dim * r.dim;
        }
        std::sort(dims.begin(), dims.end());
        j["irrep_dimensions"] = sizes_json(dims);
        j["irrep_residual"] = chk(irrep_residual(g, reps), tol.eps_verify);
        j["sum_of_squares_matches_order"] = chk.flag(sq == g.order());

        const QuantumGroup gq = as_quantum_group(g), dq = dual(g, tol, seed);
        std::vector<int> sizes;
        for (const auto& c : dq.space.classes())
            sizes.push_back(static_cast<int>(c.size()));
        std::sort(sizes.begin(), sizes.end());
        j["dual_class_sizes"] = sizes_json(sizes);
        j["quadrant"] = classify(gq);
        j["dual_quadrant"] = classify(dq);
        j["comultiplication"] = comult_json(comultiplication_check(gq, tol, seed), chk, tol);
        j["dual_comultiplication"] = comult_json(comultiplication_check(dq, tol, seed), chk, tol);
        const auto ba = dual_block_agreement(g, tol, seed);
        j["block_agreement"] = {{"group_algebra_blocks", sizes_json(ba.group_algebra_blocks)},
                                {"dual_measure_blocks", sizes_json(ba.dual_measure_blocks)},
                                {"agree", chk.flag(ba.agree)}};
        if (g.is_abelian()) {
            const auto dd = double_dual_abelian(g, tol, seed);
            j["double_dual"] = {{"dual_order", dd.dual_order},
                                {"double_dual_order", dd.double_dual_order},
                                {"character_residual", chk(dd.character_residual, tol.eps_verify)},
                                {"bijective", chk.flag(dd.bijective)},
                                {"homomorphism", chk.flag(dd.homomorphism)},
                                {"evaluation", sizes_json(dd.evaluation)}};
        }
        out.push_back(j);
    }
    return out;
}

Json cmd_oml(const RunConfig& cfg, Checker& chk)
{
    need_inputs(cfg);
    Json out = Json::array();
    for (const auto& path : cfg.inputs) {
        const FiniteLattice l = io::parse_lattice(io::read_json(path));
        Json j{{"input", path}, {"size", l.size}};
        const OmlReport r = is_oml(l);
        j["is_oml"] = r.ok();
        j["involution_failures"] = static_cast<int>(r.involution_failures.size());
        j["order_reversal_failures"] = static_cast<int>(r.order_reversal_failures.size());
        j["complement_failures"] = static_cast<int>(r.complement_failures.size());
        j["orthomodular_failures"] = static_cast<int>(r.orthomodular_failures.size());
        const bool boolean = is_boolean(l), distributive = is_distributive(l);
        j["is_boolean"] = boolean;
        j["is_distributive"] = distributive;
        for (int a = 0; a < l.size && !boolean; ++a)
            for (int b = a + 1; b < l.size; ++b)
                if (dot_meet(l, a, b) != dot_meet(l, b, a)) {
                    j["commutator_witness"] = {{"a", a}, {"b", b}, {"a_dot_b", dot_meet(l, a, b)},
                                               {"b_dot_a", dot_meet(l, b, a)}};
                    a = l.size;
                    break;
                }
        if (r.ok())
            j["boolean_iff_distributive"] = chk.flag(boolean == distributive);
        if (boolean) {
            const StoneReport s = stone(l);
            j["stone"] = {{"atoms", sizes_json(s.atoms)},
                          {"bijective", chk.flag(s.bijective)},
                          {"preserves_meet", chk.flag(s.preserves_meet)},
                          {"preserves_join", chk.flag(s.preserves_join)},
                          {"preserves_complement", chk.flag(s.preserves_complement)}};
        }
        out.push_back(j);
    }
    return out;
}

Json cmd_verify(const RunConfig& cfg, Checker& chk)
{
    const std::uint64_t seed = cfg.seed.value_or(acceptance::kDefaultSeed);
    std::vector<acceptance::CriterionResult> results;
    if (cfg.criterion) {
        if (*cfg.criterion < 1 || *cfg.criterion > acceptance::kCriteria)
            throw UsageError("criterion must be in 1.." + std::to_string(acceptance::kCriteria));
        results.push_back(acceptance::run_criterion(*cfg.criterion, seed));
    } else {
        results = acceptance::run_all(seed);
    }
    Json out = Json::array();
    for (const auto& r : results) {
        Json j{{"id", r.id}, {"title", r.title}, {"passed", chk.flag(r.passed)}, {"cases", r.cases},
               {"failures", r.failures}};
        j["worst"] = Json{{"value", r.worst}, {"tolerance", r.bound}};
        j["detail"] = r.detail;
        j["line"] = acceptance::format_line(r);
        out.push_back(j);
    }
    return out;
}

std::vector<std::string> split_lines(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);)
        if (!line.empty())
            out.push_back(line);
    return out;
}

} // namespace

RunResult run(const RunConfig& cfg)
{
    RunResult res;
    Json& rep = res.report;
    rep["command"] = cfg.command;
    rep["inputs"] = cfg.inputs;
    rep["seed"] = cfg.seed ? Json(*cfg.seed) : Json(nullptr);
    rep["tolerances"] = {{"eps_rank", cfg.tol.eps_rank}, {"eps_eig", cfg.tol.eps_eig}, {"eps_verify", cfg.tol.eps_verify}};
    if (cfg.command == "funcalc")
        rep["function"] = cfg.function;

    Checker chk;
    try {
        cfg.tol.validate();
        Json results;
        if (cfg.command == "decompose")
            results = cmd_decompose(cfg, chk);
        else if (cfg.command == "funcalc")
            results = cmd_funcalc(cfg, chk);
        else if (cfg.command == "invsub")
            results = cmd_invsub(cfg, chk);
        else if (cfg.command == "algebra")
            results = cmd_algebra(cfg, chk);
        else if (cfg.command == "duality-roundtrip")
            results = cmd_roundtrip(cfg, chk);
        else if (cfg.command == "group")
            results = cmd_group(cfg, chk);
        else if (cfg.command == "oml")
            results = cmd_oml(cfg, chk);
        else if (cfg.command == "verify")
            results = cmd_verify(cfg, chk);
        else
            throw UsageError("unknown command '" + cfg.command + "'");
        rep["results"] = results;
        res.exit_code = chk.ok ? kExitOk : kExitVerification;
        rep["status"] = chk.ok ? "ok" : "verification-failed";
    } catch (const InputError& e) {
        res.diagnostics = split_lines(e.what());
        res.exit_code = kExitInput;
    } catch (const DimensionMismatch& e) {
        res.diagnostics = split_lines(e.what());
        res.exit_code = kExitInput;
    } catch (const RelationMismatch& e) {
        res.diagnostics = split_lines(e.what());
        res.exit_code = kExitInput;
    } catch (const ParentMismatch& e) {
        res.diagnostics = split_lines(e.what());
        res.exit_code = kExitInput;
    } catch (const Error& e) {
        // Numerical failure on well-formed input.
        rep["error"] = e.what();
        rep["status"] = "verification-failed";
        res.exit_code = kExitVerification;
    }
    if (res.exit_code == kExitInput) {
        rep["status"] = "input-error";
        rep["diagnostics"] = res.diagnostics;
    }
    rep["exit_code"] = res.exit_code;
    return res;
}

std::string render(const Json& report)
{
    return report.dump(2) + "\n";
}

} // namespace ncdual::cli
