#include "ncdual/io.hpp"

#include <filesystem>
#include <fstream>
#include <cmath>

#include "ncdual/errors.hpp"

namespace ncdual::io {

namespace {

// Collects one message per malformed field and throws them together.
class Diagnostics {
public:
    void add(std::string msg) { lines_.push_back(std::move(msg)); }
    bool ok() const { return lines_.empty(); }
    void raise_if_any() const
    {
        if (lines_.empty())
            return;
        std::string s;
        for (std::size_t i = 0; i < lines_.size(); ++i) {
            if (i)
                s += "\n";
            s += lines_[i];
        }
        throw InputError(s);
    }

private:
    std::vector<std::string> lines_;
};

const Json* field(const Json& j, const char* name, Diagnostics& d)
{
    if (!j.is_object()) {
        d.add("document is not an object");
        return nullptr;
    }
    auto it = j.find(name);
    if (it == j.end()) {
        d.add(std::string("field \"") + name + "\" is missing");
        return nullptr;
    }
    return &*it;
}

bool get_int(const Json& j, const char* name, int& out, Diagnostics& d)
{
    const Json* f = field(j, name, d);
    if (!f)
        return false;
    if (!f->is_number_integer()) {
        d.add(std::string("field \"") + name + "\" must be an integer");
        return false;
    }
    out = f->get<int>();
    return true;
}

bool to_complex(const Json& v, Complex& out)
{
    if (v.is_number()) {
        out = Complex(v.get<double>(), 0.0);
        return true;
    }
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        out = Complex(v[0].get<double>(), v[1].get<double>());
        return true;
    }
    return false;
}

Matrix matrix_from(const Json& j, const std::string& where, Diagnostics& d)
{
    bool bad = false;
    auto add = [&](const std::string& msg) {
        d.add(where.empty() ? msg : where + ": " + msg);
        bad = true;
    };
    if (!j.is_object()) {
        add("matrix is not an object");
        return Matrix();
    }
    int dim = 0;
    const auto dit = j.find("dim");
    if (dit == j.end())
        add("field \"dim\" is missing");
    else if (!dit->is_number_integer() || dit->get<int>() < 1)
        add("field \"dim\" must be a positive integer");
    else
        dim = dit->get<int>();
    const auto eit = j.find("entries");
    if (eit == j.end()) {
        add("field \"entries\" is missing");
        return Matrix();
    }
    if (!eit->is_array()) {
        add("field \"entries\" must be a list of [re, im] pairs");
        return Matrix();
    }
    if (dim < 1)
        return Matrix();
    if (eit->size() != static_cast<std::size_t>(dim) * dim) {
        add("field \"entries\" has " + std::to_string(eit->size()) + " items; dim " + std::to_string(dim) +
            " needs " + std::to_string(dim * dim));
        return Matrix();
    }
    Matrix m(dim, dim);
    for (int k = 0; k < dim * dim; ++k) {
        Complex z;
        if (!to_complex((*eit)[k], z))
            add("entries[" + std::to_string(k) + "] is not a [re, im] pair");
        else if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            add("entries[" + std::to_string(k) + "] is not finite");
        else
            m(k / dim, k % dim) = z;
    }
    return bad ? Matrix() : m;
}

std::vector<std::string> point_labels(const Json& j, Diagnostics& d)
{
    std::vector<std::string> pts;
    const Json* p = field(j, "points", d);
    if (!p)
        return pts;
    if (!p->is_array()) {
        d.add("field \"points\" must be a list of labels");
        return pts;
    }
    for (std::size_t i = 0; i < p->size(); ++i) {
        if (!(*p)[i].is_string())
            d.add("points[" + std::to_string(i) + "] is not a string");
        else
            pts.push_back((*p)[i].get<std::string>());
    }
    return pts;
}

int label_index(const std::vector<std::string>& pts, const Json& v, const std::string& where, Diagnostics& d)
{
    if (!v.is_string()) {
        d.add(where + " is not a point label");
        return -1;
    }
    const std::string s = v.get<std::string>();
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (pts[i] == s)
            return static_cast<int>(i);
    d.add(where + " names unknown point \"" + s + "\"");
    return -1;
}

std::vector<PointPair> label_pairs(const Json& j, const char* name, const std::vector<std::string>& pts,
                                   Diagnostics& d)
{
    std::vector<PointPair> out;
    const Json* p = field(j, name, d);
    if (!p)
        return out;
    if (!p->is_array()) {
        d.add(std::string("field \"") + name + "\" must be a list of label pairs");
        return out;
    }
    for (std::size_t i = 0; i < p->size(); ++i) {
        const Json& e = (*p)[i];
        const std::string where = std::string(name) + "[" + std::to_string(i) + "]";
        if (!e.is_array() || e.size() != 2) {
            d.add(where + " is not a 2-element list");
            continue;
        }
        const int x = label_index(pts, e[0], where, d), y = label_index(pts, e[1], where, d);
        if (x >= 0 && y >= 0)
            out.emplace_back(x, y);
    }
    return out;
}

std::vector<int> int_list(const Json& j, const char* name, Diagnostics& d)
{
    std::vector<int> out;
    const Json* f = field(j, name, d);
    if (!f)
        return out;
    if (!f->is_array()) {
        d.add(std::string("field \"") + name + "\" must be a list of integers");
        return out;
    }
    for (std::size_t i = 0; i < f->size(); ++i) {
        if (!(*f)[i].is_number_integer()) {
            d.add(std::string(name) + "[" + std::to_string(i) + "] is not an integer");
            out.push_back(-1);
        } else
            out.push_back((*f)[i].get<int>());
    }
    return out;
}

FinEquivRel relation_from(const Json& j, Diagnostics& d)
{
    auto pts = point_labels(j, d);
    auto pairs = label_pairs(j, "pairs", pts, d);
    d.raise_if_any();
    return FinEquivRel::from_pairs(std::move(pts), pairs);
}

} // namespace

Json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError(path + ": cannot open file");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

Matrix parse_matrix(const Json& j)
{
    Diagnostics d;
    Matrix m = matrix_from(j, "", d);
    d.raise_if_any();
    return m;
}

AlgebraInput parse_algebra(const Json& j)
{
    Diagnostics d;
    AlgebraInput a;
    const bool have = get_int(j, "ambient_dim", a.ambient_dim, d);
    if (have && a.ambient_dim < 1)
        d.add("field \"ambient_dim\" must be positive");
    const Json* g = field(j, "generators", d);
    if (g && !g->is_array())
        d.add("field \"generators\" must be a list of matrices");
    else if (g)
        for (std::size_t i = 0; i < g->size(); ++i) {
            const std::string where = "generators[" + std::to_string(i) + "]";
            Matrix m = matrix_from((*g)[i], where, d);
            if (m.size() == 0)
                continue;
            if (have && m.rows() != a.ambient_dim)
                d.add(where + ": dim " + std::to_string(m.rows()) + " differs from ambient_dim " +
                      std::to_string(a.ambient_dim));
            a.generators.push_back(std::move(m));
        }
    d.raise_if_any();
    return a;
}

StateInput parse_state(const Json& j, const std::string& base_dir)
{
    Diagnostics d;
    StateInput s;
    const Json* alg = field(j, "algebra", d);
    if (alg && !alg->is_string())
        d.add("field \"algebra\" must be a path");
    else if (alg) {
        std::filesystem::path p(alg->get<std::string>());
        if (p.is_relative())
            p = std::filesystem::path(base_dir) / p;
        s.algebra_path = p.string();
    }
    const Json* v = field(j, "values", d);
    if (v && !v->is_array())
        d.add("field \"values\" must be a list of [re, im] pairs");
    else if (v)
        for (std::size_t i = 0; i < v->size(); ++i) {
            Complex z;
            if (!to_complex((*v)[i], z))
                d.add("values[" + std::to_string(i) + "] is not a [re, im] pair");
            s.values.push_back(z);
        }
    d.raise_if_any();
    return s;
}

FinEquivRel parse_relation(const Json& j)
{
    Diagnostics d;
    return relation_from(j, d);
}

RelMeasure parse_measure(const Json& j)
{
    Diagnostics d;
    FinEquivRel r = relation_from(j, d);
    RelMeasure m = zero_measure(r);
    const Json* w = field(j, "weights", d);
    if (w && !w->is_array())
        d.add("field \"weights\" must be a list of [from, to, re, im]");
    else if (w)
        for (std::size_t i = 0; i < w->size(); ++i) {
            const Json& e = (*w)[i];
            const std::string where = "weights[" + std::to_string(i) + "]";
            if (!e.is_array() || e.size() != 4 || !e[2].is_number() || !e[3].is_number()) {
                d.add(where + " is not [from, to, re, im]");
                continue;
            }
            const int x = label_index(r.points(), e[0], where, d), y = label_index(r.points(), e[1], where, d);
            if (x < 0 || y < 0)
                continue;
            if (!r.contains(x, y)) {
                d.add(where + " puts mass outside the relation");
                continue;
            }
            m.weights(x, y) += Complex(e[2].get<double>(), e[3].get<double>());
        }
    d.raise_if_any();
    return m;
}

SubRel parse_subrel(const Json& j)
{
    Diagnostics d;
    auto parent = std::make_shared<const FinEquivRel>(relation_from(j, d));
    auto pairs = label_pairs(j, "subset_pairs", parent->points(), d);
    d.raise_if_any();
    return SubRel::from_pairs(parent, pairs);
}

FiniteGroup parse_group(const Json& j)
{
    Diagnostics d;
    int order = 0;
    get_int(j, "order", order, d);
    std::vector<int> table = int_list(j, "table", d);
    std::string name;
    if (j.is_object() && j.contains("name")) {
        if (!j["name"].is_string())
            d.add("field \"name\" must be a string");
        else
            name = j["name"].get<std::string>();
    }
    d.raise_if_any();
    return FiniteGroup(order, std::move(table), name.empty() ? "G" + std::to_string(order) : name);
}

FiniteLattice parse_lattice(const Json& j)
{
    Diagnostics d;
    FiniteLattice l;
    get_int(j, "size", l.size, d);
    l.meet = int_list(j, "meet", d);
    l.join = int_list(j, "join", d);
    l.complement = int_list(j, "complement", d);
    get_int(j, "zero", l.zero, d);
    get_int(j, "one", l.one, d);
    if (j.is_object() && j.contains("name") && j["name"].is_string())
        l.name = j["name"].get<std::string>();
    d.raise_if_any();
    l.validate();
    return l;
}

Json complex_json(Complex z)
{
    return Json::array({z.real(), z.imag()});
}

Json matrix_json(const Matrix& m)
{
    Json entries = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index k = 0; k < m.cols(); ++k)
            entries.push_back(complex_json(m(i, k)));
    Json out;
    out["dim"] = m.rows();
    out["entries"] = std::move(entries);
    return out;
}

Json relation_json(const FinEquivRel& r)
{
    Json out;
    out["points"] = r.points();
    Json pairs = Json::array();
    for (const auto& [x, y] : r.pairs())
        pairs.push_back(Json::array({r.points()[x], r.points()[y]}));
    out["pairs"] = std::move(pairs);
    return out;
}

Json group_json(const FiniteGroup& g)
{
    Json out;
    out["order"] = g.order();
    out["table"] = g.table();
    out["name"] = g.name();
    return out;
}

Json lattice_json(const FiniteLattice& l)
{
    Json out;
    out["size"] = l.size;
    out["meet"] = l.meet;
    out["join"] = l.join;
    out["complement"] = l.complement;
    out["zero"] = l.zero;
    out["one"] = l.one;
    if (!l.name.empty())
        out["name"] = l.name;
    return out;
}

std::string parent_dir(const std::string& path)
{
    const auto p = std::filesystem::path(path).parent_path();
    return p.empty() ? std::string(".") : p.string();
}

} // namespace ncdual::io
