#include <doctest.h>

#include <string>

#include "ncdual/errors.hpp"
#include "ncdual/io.hpp"

using namespace ncdual;
using io::Json;

namespace {

std::string data(const char* name)
{
    return std::string(NCDUAL_DATA_DIR) + "/" + name;
}

std::string message(const auto& fn)
{
    try {
        fn();
    } catch (const InputError& e) {
        return e.what();
    }
    return {};
}

int lines(const std::string& s)
{
    int n = 0;
    for (char c : s)
        n += c == '\n';
    return n + (s.empty() || s.back() == '\n' ? 0 : 1);
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("matrices")
{
    const Matrix m = io::parse_matrix(io::read_json(data("jordan2.json")));
    REQUIRE(m.rows() == 2);
    CHECK(m(0, 1) == Complex(1.0));
    CHECK(m(1, 0) == Complex(0.0));

    const Json back = io::matrix_json(m);
    CHECK(io::parse_matrix(back) == m);

    const std::string bad = message([] { io::parse_matrix(io::read_json(data("bad_matrix.json"))); });
    CHECK(bad.find("entries") != std::string::npos);

    const Json j = Json::parse(R"({"dim": 2, "entries": [[1,0],[1],"x",[0]]})");
    const std::string many = message([&] { io::parse_matrix(j); });
    CHECK(lines(many) >= 2);
    CHECK(many.find("entries[1]") != std::string::npos);
    CHECK(many.find("entries[2]") != std::string::npos);

    CHECK(!message([] { io::read_json("/nonexistent/file.json"); }).empty());
}

TEST_CASE("algebras and states")
{
    const auto a = io::parse_algebra(io::read_json(data("m2_nilpotent.json")));
    CHECK(a.ambient_dim == 2);
    REQUIRE(a.generators.size() == 1);

    const Json wrong = Json::parse(R"({"ambient_dim": 3, "generators": [{"dim": 2, "entries": [[0,0],[1,0],[0,0],[0,0]]}]})");
    CHECK(message([&] { io::parse_algebra(wrong); }).find("ambient_dim") != std::string::npos);

    const Json st = Json::parse(R"({"algebra": "m2_nilpotent.json", "values": [[1,0],[0,0]]})");
    const auto s = io::parse_state(st, "/base/dir");
    CHECK(s.algebra_path == "/base/dir/m2_nilpotent.json");
    CHECK(s.values.size() == 2);
    const auto abs = io::parse_state(Json::parse(R"({"algebra": "/x/a.json", "values": []})"), "/base");
    CHECK(abs.algebra_path == "/x/a.json");
    CHECK(lines(message([] { io::parse_state(Json::parse(R"({"values": "x"})"), "."); })) == 2);
    CHECK(io::parent_dir("a/b/c.json") == "a/b");
    CHECK(io::parent_dir("c.json") == ".");
}

TEST_CASE("relations, measures and sub-relations")
{
    const FinEquivRel r = io::parse_relation(io::read_json(data("relation_2_3.json")));
    CHECK(r.size() == 5);
    CHECK(r.class_sizes() == std::vector<int>{2, 3});
    CHECK(io::parse_relation(io::relation_json(r)) == r);

    const RelMeasure m = io::parse_measure(io::read_json(data("measure_2.json")));
    CHECK(m(0, 1) == Complex(0.5, -0.5));
    CHECK(m(1, 1) == Complex(-1.0));
    CHECK(m(1, 0) == Complex(0.0));

    const SubRel u = io::parse_subrel(io::read_json(data("subrel_ab.json")));
    CHECK(u.parent().size() == 3);
    CHECK(u.contains(0, 1));
    CHECK(!u.in_domain(2));

    // Not transitive, and an asymmetric pair.
    const Json bad = Json::parse(R"({"points": ["a","b","c"], "pairs": [["a","a"],["b","b"],["c","c"],["a","b"],["b","a"],["b","c"],["c","b"],["a","x"]]})");
    CHECK(!message([&] { io::parse_relation(bad); }).empty());
    const Json off = Json::parse(R"({"points": ["a","b"], "pairs": [["a","a"],["b","b"]], "weights": [["a","b",1,0]]})");
    CHECK(!message([&] { io::parse_measure(off); }).empty());
}

TEST_CASE("groups and lattices")
{
    const FiniteGroup s3 = io::parse_group(io::read_json(data("s3.json")));
    CHECK(s3.order() == 6);
    CHECK(!s3.is_abelian());
    CHECK(io::parse_group(io::group_json(s3)).table() == s3.table());
    const std::string na = message([] { io::parse_group(io::read_json(data("nonassociative_group.json"))); });
    CHECK(na.find("not associative at (1,1,2)") != std::string::npos);

    const FiniteLattice l = io::parse_lattice(io::read_json(data("mo2.json")));
    CHECK(l.size == 6);
    CHECK(l.meet == mo2().meet);
    const FiniteLattice back = io::parse_lattice(io::lattice_json(l));
    CHECK(back.join == l.join);
    CHECK(back.complement == l.complement);
}

}
