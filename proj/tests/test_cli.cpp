#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "ncdual/cli.hpp"

using namespace ncdual;
using cli::RunConfig;
using io::Json;

namespace {

std::string data(const char* name)
{
    return std::string(NCDUAL_DATA_DIR) + "/" + name;
}

RunConfig config(std::string command, std::vector<std::string> inputs, std::optional<std::uint64_t> seed = {})
{
    RunConfig c;
    c.command = std::move(command);
    c.inputs = std::move(inputs);
    c.seed = seed;
    return c;
}

std::string temp_file(const std::string& name, const std::string& body)
{
    const auto p = std::filesystem::temp_directory_path() / ("ncdual_test_" + name);
    std::ofstream(p) << body;
    return p.string();
}

// Every object with a "value" also carries a "tolerance".
bool residuals_have_tolerance(const Json& j)
{
    if (j.is_object()) {
        if (j.contains("value") && j["value"].is_number() && !j.contains("tolerance"))
            return false;
        for (const auto& [k, v] : j.items())
            if (!residuals_have_tolerance(v))
                return false;
    } else if (j.is_array()) {
        for (const auto& v : j)
            if (!residuals_have_tolerance(v))
                return false;
    }
    return true;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("decompose and funcalc on data files")
{
    auto r = cli::run(config("decompose", {data("jordan2.json"), data("jordan3_mixed.json")}));
    CHECK(r.exit_code == cli::kExitOk);
    CHECK(r.report["status"] == "ok");
    CHECK(r.report["results"].size() == 2);
    CHECK(residuals_have_tolerance(r.report));

    RunConfig f = config("funcalc", {data("jordan2.json")});
    f.function = "exp";
    r = cli::run(f);
    CHECK(r.exit_code == cli::kExitOk);
    CHECK(r.report["function"] == "exp");
    CHECK(residuals_have_tolerance(r.report));

    f.function = "bogus";
    CHECK(cli::run(f).exit_code == cli::kExitInput);
}

TEST_CASE("reports are deterministic")
{
    const RunConfig c = config("algebra", {data("c_plus_m2.json")}, 9);
    const std::string a = cli::render(cli::run(c).report), b = cli::render(cli::run(c).report);
    CHECK(a == b);
    CHECK(a.back() == '\n');
    const RunConfig g = config("group", {data("s3.json")}, 4);
    CHECK(cli::render(cli::run(g).report) == cli::render(cli::run(g).report));
}

TEST_CASE("randomized commands require a seed")
{
    for (const char* cmd : {"algebra", "group"}) {
        const auto r = cli::run(config(cmd, {data("s3.json")}));
        CHECK(r.exit_code == cli::kExitInput);
        REQUIRE(!r.diagnostics.empty());
        CHECK(r.diagnostics[0].find("requires --seed") != std::string::npos);
        CHECK(r.report["status"] == "input-error");
    }
}

TEST_CASE("input errors exit with code 2 and one diagnostic per problem")
{
    auto r = cli::run(config("group", {data("nonassociative_group.json")}, 1));
    CHECK(r.exit_code == cli::kExitInput);
    REQUIRE(!r.diagnostics.empty());
    CHECK(r.diagnostics[0].find("not associative at (1,1,2)") != std::string::npos);

    const std::string bad = temp_file("two_errors.json", R"({"dim": 2, "entries": [[1,0],"x",[0],[0,0]]})");
    r = cli::run(config("decompose", {bad}));
    CHECK(r.exit_code == cli::kExitInput);
    CHECK(r.diagnostics.size() >= 2);

    CHECK(cli::run(config("decompose", {})).exit_code == cli::kExitInput);
    CHECK(cli::run(config("nope", {data("jordan2.json")})).exit_code == cli::kExitInput);
    CHECK(cli::run(config("decompose", {"/nonexistent.json"})).exit_code == cli::kExitInput);

    RunConfig t = config("decompose", {data("jordan2.json")});
    t.tol.eps_rank = -1.0;
    CHECK(cli::run(t).exit_code == cli::kExitInput);
}

TEST_CASE("state files resolve their algebra next to themselves")
{
    const std::string alg = temp_file("alg.json", R"({"ambient_dim": 2, "generators": [{"dim": 2, "entries": [[1,0],[0,0],[0,0],[0,0]]}]})");
    const std::string st = temp_file("state.json", R"({"algebra": "ncdual_test_alg.json", "values": [[1,0]]})");
    const auto r = cli::run(config("algebra", {st}, 3));
    // Dimension of the algebra generated by diag(1,0) is 2, so one value is wrong.
    CHECK(r.exit_code == cli::kExitInput);
    REQUIRE(!r.diagnostics.empty());
    CHECK(r.diagnostics[0].find("algebra dimension is 2") != std::string::npos);
    CHECK(cli::run(config("algebra", {alg}, 3)).exit_code == cli::kExitOk);
}

TEST_CASE("roundtrip, invsub and oml")
{
    auto r = cli::run(config("duality-roundtrip", {data("relation_2_3.json")}));
    CHECK(r.exit_code == cli::kExitOk);
    CHECK(residuals_have_tolerance(r.report));

    r = cli::run(config("duality-roundtrip", {data("m2_nilpotent.json")}, 5));
    CHECK(r.exit_code == cli::kExitOk);

    r = cli::run(config("invsub", {data("jordan3_mixed.json")}));
    CHECK(r.exit_code == cli::kExitOk);

    r = cli::run(config("oml", {data("mo2.json")}));
    CHECK(r.exit_code == cli::kExitOk);
    CHECK(r.report.dump().find("\"is_boolean\":false") != std::string::npos);
}

TEST_CASE("group reports the quadrants")
{
    const auto r = cli::run(config("group", {data("s3.json"), data("z4.json")}, 2));
    CHECK(r.exit_code == cli::kExitOk);
    const std::string text = r.report.dump();
    CHECK(text.find("nonabelian-commutative") != std::string::npos);
    CHECK(text.find("abelian-noncommutative") != std::string::npos);
    CHECK(residuals_have_tolerance(r.report));
}

TEST_CASE("verify of a single criterion")
{
    RunConfig c = config("verify", {});
    c.criterion = 12;
    const auto r = cli::run(c);
    CHECK(r.exit_code == cli::kExitOk);
    REQUIRE(r.report["results"].size() == 1);
    CHECK(r.report["results"][0]["passed"] == true);
    c.criterion = 14;
    CHECK(cli::run(c).exit_code == cli::kExitInput);
}

}
