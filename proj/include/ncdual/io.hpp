#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncdual/duality.hpp"
#include "ncdual/numeric.hpp"
#include "ncdual/oml.hpp"
#include "ncdual/omega.hpp"
#include "ncdual/relation.hpp"
#include "ncdual/relmeasure.hpp"

namespace ncdual::io {

using Json = nlohmann::ordered_json;

/// Parses a file; throws InputError "<path>: ..." when unreadable or malformed.
Json read_json(const std::string& path);

// Every parser reports all malformed fields at once: the InputError message
// holds one line per problem.

Matrix parse_matrix(const Json& j);

struct AlgebraInput {
    int ambient_dim = 0;
    std::vector<Matrix> generators;
};
AlgebraInput parse_algebra(const Json& j);

struct StateInput {
    std::string algebra_path;
    std::vector<Complex> values;
};
/// algebra_path is resolved against base_dir when relative.
StateInput parse_state(const Json& j, const std::string& base_dir);

FinEquivRel parse_relation(const Json& j);
RelMeasure parse_measure(const Json& j);
/// Parent relation and the sub-relation given by "subset_pairs".
SubRel parse_subrel(const Json& j);
FiniteGroup parse_group(const Json& j);
FiniteLattice parse_lattice(const Json& j);

Json complex_json(Complex z);
Json matrix_json(const Matrix& m);
Json relation_json(const FinEquivRel& r);
Json group_json(const FiniteGroup& g);
Json lattice_json(const FiniteLattice& l);

/// Directory part of a path ("." if none).
std::string parent_dir(const std::string& path);

} // namespace ncdual::io
