#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ncdual/cli.hpp"

int main(int argc, char** argv)
{
    ncdual::cli::RunConfig cfg;
    CLI::App app{"Finite-dimensional C*-algebra duality toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 0;
    int criterion = 0;
    app.add_option("--input", cfg.inputs, "Input file (repeatable)");
    app.add_option("--out", cfg.out, "Write the report here instead of stdout");
    auto* seed_opt = app.add_option("--seed", seed, "Seed for randomized commands");
    app.add_option("--eps-rank", cfg.tol.eps_rank, "Singular-value cutoff");
    app.add_option("--eps-eig", cfg.tol.eps_eig, "Eigenvalue clustering radius");
    app.add_option("--eps-verify", cfg.tol.eps_verify, "Residual acceptance bound");
    app.add_option("--function", cfg.function, "exp, sin, cos, poly:c0,c1,.. or rational:p..;q..");

    const std::pair<const char*, const char*> commands[] = {
        {"decompose", "Jordan form, spectral families and their checks"},
        {"funcalc", "Functional calculus of --function, compared with the Riesz integral"},
        {"invsub", "Nontrivial invariant subspace"},
        {"algebra", "Block structure, relation and round-trip of algebras; GNS data of states"},
        {"duality-roundtrip", "Round-trip of algebra, relation, measure or sub-relation files"},
        {"group", "Irreps, dual quantum group, comultiplication and double dual"},
        {"oml", "Orthomodular-lattice axioms, Boolean criterion and Stone map"},
        {"verify", "Acceptance suite"},
    };
    CLI::Option* crit_opt = nullptr;
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->fallthrough();
        if (std::string(name) == "verify")
            crit_opt = sub->add_option("--criterion", criterion, "Run a single criterion");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : ncdual::cli::kExitInput;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    if (seed_opt->count() > 0)
        cfg.seed = seed;
    if (crit_opt && crit_opt->count() > 0)
        cfg.criterion = criterion;

    const auto result = ncdual::cli::run(cfg);
    for (const auto& line : result.diagnostics)
        std::cerr << "error: " << line << "\n";
    const std::string text = ncdual::cli::render(result.report);
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.out);
        if (!f) {
            std::cerr << "error: cannot write " << cfg.out << "\n";
            return ncdual::cli::kExitInput;
        }
        f << text;
    }
    if (cfg.command == "verify")
        for (const auto& r : result.report.value("results", ncdual::io::Json::array()))
            std::cerr << r["line"].get<std::string>() << "\n";
    return result.exit_code;
}
