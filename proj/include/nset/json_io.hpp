#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "nset/dyadic.hpp"
#include "nset/lattice.hpp"
#include "nset/search.hpp"
#include "nset/tiling.hpp"

namespace nset {

using Json = nlohmann::ordered_json;

/// Input document does not match the expected schema.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Readers throw SchemaError; they never return a partially built value.

GridTiling tiling_from_json(const Json& j);
BoxUnion boxes_from_json(const Json& j);
LatticeSet points_from_json(const Json& j);
/// {"dirs": [[...], ...]} or the bare array of directions.
LineFamily lines_from_json(const Json& j);

Json to_json(const GridTiling& t);
Json to_json(const BoxUnion& k);
Json to_json(const LatticeSet& a);
Json points_array(const LatticeSet& a);
Json to_json(const LatticeVector& v);
Json to_json(const RefineReport& r);
Json to_json(const SearchReport& r, bool with_timing = false);

bool looks_like_tiling(const Json& j);
bool looks_like_boxes(const Json& j);

/// JSON Schema for one of: tiling, boxes, points, lines.
Json schema_for(const std::string& type);

} // namespace nset
