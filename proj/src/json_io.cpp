#include "nset/json_io.hpp"

namespace nset {

namespace {

std::int64_t read_int(const Json& j, const std::string& what)
{
    if (!j.is_number_integer()) {
        throw SchemaError(what + " must be an integer");
    }
    return j.get<std::int64_t>();
}

std::size_t read_positive(const Json& obj, const char* key)
{
    if (!obj.contains(key)) {
        throw SchemaError(std::string("missing field \"") + key + "\"");
    }
    const auto v = read_int(obj.at(key), std::string("\"") + key + "\"");
    if (v < 1) {
        throw SchemaError(std::string("\"") + key + "\" must be at least 1");
    }
    return static_cast<std::size_t>(v);
}

LatticeVector read_vector(const Json& j, std::size_t dim, const std::string& what)
{
    if (!j.is_array() || j.size() != dim) {
        throw SchemaError(what + " must be an array of " + std::to_string(dim) + " integers");
    }
    LatticeVector v(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        v[i] = read_int(j[i], what);
    }
    return v;
}

Rational read_rational(const Json& j)
{
    if (j.is_number_integer()) {
        return Rational(j.get<std::int64_t>());
    }
    if (!j.is_string()) {
        throw SchemaError("box endpoints must be \"p/q\" strings");
    }
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
        throw SchemaError(std::string("bad rational: ") + e.what());
    }
}

} // namespace

bool looks_like_tiling(const Json& j) { return j.is_object() && j.contains("u"); }

bool looks_like_boxes(const Json& j) { return j.is_object() && j.contains("boxes"); }

GridTiling tiling_from_json(const Json& j)
{
    if (!j.is_object()) {
        throw SchemaError("tiling must be a JSON object");
    }
    const auto n = read_positive(j, "n");
    const auto m = read_positive(j, "m");
    if (!j.contains("u") || !j.at("u").is_array()) {
        throw SchemaError("tiling needs a \"u\" array");
    }
    std::vector<LatticeVector> us;
    for (const auto& e : j.at("u")) {
        us.push_back(read_vector(e, n, "translation"));
    }
    try {
        return GridTiling(n, m, std::move(us));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
}

BoxUnion boxes_from_json(const Json& j)
{
    if (!j.is_object()) {
        throw SchemaError("box union must be a JSON object");
    }
    const auto n = read_positive(j, "n");
    if (!j.contains("boxes") || !j.at("boxes").is_array()) {
        throw SchemaError("box union needs a \"boxes\" array");
    }
    std::vector<Box> boxes;
    for (const auto& jb : j.at("boxes")) {
        if (!jb.is_array() || jb.size() != n) {
            throw SchemaError("each box must list " + std::to_string(n) + " intervals");
        }
        Box b;
        for (const auto& iv : jb) {
            if (!iv.is_array() || iv.size() != 2) {
                throw SchemaError("each interval must be [lo, hi]");
            }
            b.push_back({read_rational(iv[0]), read_rational(iv[1])});
        }
        boxes.push_back(std::move(b));
    }
    try {
        return BoxUnion(n, std::move(boxes));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
}

LatticeSet points_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("points") || !j.at("points").is_array()) {
        throw SchemaError("lattice set needs a \"points\" array");
    }
    const auto& pts = j.at("points");
    if (pts.empty()) {
        throw SchemaError("lattice set must not be empty");
    }
    if (!pts[0].is_array() || pts[0].empty()) {
        throw SchemaError("points must be nonempty integer arrays");
    }
    const std::size_t n = pts[0].size();
    std::vector<LatticeVector> elems;
    for (const auto& p : pts) {
        elems.push_back(read_vector(p, n, "point"));
    }
    return LatticeSet(n, std::move(elems));
}

LineFamily lines_from_json(const Json& j)
{
    const Json& dirs = j.is_object() && j.contains("dirs") ? j.at("dirs") : j;
    if (!dirs.is_array() || dirs.empty() || !dirs[0].is_array()) {
        throw SchemaError("line family needs a \"dirs\" array of integer vectors");
    }
    const std::size_t n = dirs[0].size();
    std::vector<LatticeVector> out;
    for (const auto& d : dirs) {
        out.push_back(read_vector(d, n, "direction"));
    }
    try {
        return LineFamily(std::move(out));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
}

Json to_json(const LatticeVector& v)
{
    Json a = Json::array();
    for (auto c : v.coords()) {
        a.push_back(c);
    }
    return a;
}

Json to_json(const GridTiling& t)
{
    Json u = Json::array();
    for (std::size_t c = 0; c < t.cell_count(); ++c) {
        u.push_back(to_json(t.translation(c)));
    }
    return Json{{"n", t.dim()}, {"m", t.resolution()}, {"u", std::move(u)}};
}

Json to_json(const BoxUnion& k)
{
    Json boxes = Json::array();
    for (const auto& b : k.boxes()) {
        Json jb = Json::array();
        for (const auto& iv : b) {
            jb.push_back(Json::array({iv.lo.to_string(), iv.hi.to_string()}));
        }
        boxes.push_back(std::move(jb));
    }
    return Json{{"n", k.dim()}, {"boxes", std::move(boxes)}};
}

Json points_array(const LatticeSet& a)
{
    Json pts = Json::array();
    for (const auto& v : a) {
        pts.push_back(to_json(v));
    }
    return pts;
}

Json to_json(const LatticeSet& a) { return Json{{"points", points_array(a)}}; }

Json to_json(const RefineReport& r)
{
    Json levels = Json::array();
    for (const auto& l : r.levels) {
        levels.push_back(Json{{"N", l.level}, {"cells", l.cells}, {"diffset", points_array(l.diffset)}});
    }
    return Json{{"N0", r.stable_level},
                {"window_verified", r.window_verified},
                {"levels", std::move(levels)},
                {"exact_diffset", points_array(r.exact_diffset)}};
}

Json to_json(const SearchReport& r, bool with_timing)
{
    Json j{{"outcome", r.outcome == Outcome::Witness ? "Witness" : "ExhaustedUnsat"},
           {"m", r.resolution},
           {"value_bound", r.value_bound},
           {"nodes", r.nodes},
           {"pruned", r.pruned},
           {"bound_complete", r.bound_complete}};
    j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
    if (r.first_conflict) {
        j["first_conflict"] = Json{{"cell", r.first_conflict->cell},
                                   {"other", r.first_conflict->other},
                                   {"point", to_json(r.first_conflict->point)}};
    } else {
        j["first_conflict"] = nullptr;
    }
    if (with_timing) {
        j["elapsed_ms"] = r.elapsed.count();
    }
    return j;
}

Json schema_for(const std::string& type)
{
    const Json int_vector = {{"type", "array"}, {"items", {{"type", "integer"}}}, {"minItems", 1}};
    const std::string draft = "https://json-schema.org/draft/2020-12/schema";
    if (type == "tiling") {
        return Json{{"$schema", draft},
                    {"title", "GridTiling"},
                    {"type", "object"},
                    {"required", {"n", "m", "u"}},
                    {"properties",
                     {{"n", {{"type", "integer"}, {"minimum", 1}}},
                      {"m", {{"type", "integer"}, {"minimum", 1}}},
                      {"u",
                       {{"type", "array"},
                        {"description", "m^n translations in row-major cell order"},
                        {"items", int_vector}}}}}};
    }
    if (type == "boxes") {
        const Json rational = {{"type", "string"}, {"pattern", "^[+-]?[0-9]+(/[0-9]+)?$"}};
        return Json{{"$schema", draft},
                    {"title", "BoxUnion"},
                    {"type", "object"},
                    {"required", {"n", "boxes"}},
                    {"properties",
                     {{"n", {{"type", "integer"}, {"minimum", 1}}},
                      {"boxes",
                       {{"type", "array"},
                        {"minItems", 1},
                        {"items",
                         {{"type", "array"},
                          {"items", {{"type", "array"}, {"prefixItems", {rational, rational}}, {"minItems", 2}, {"maxItems", 2}}}}}}}}}};
    }
    if (type == "points") {
        return Json{{"$schema", draft},
                    {"title", "LatticeSet"},
                    {"type", "object"},
                    {"required", {"points"}},
                    {"properties",
                     {{"points",
                       {{"type", "array"}, {"description", "sorted lexicographically"}, {"items", int_vector}}}}}};
    }
    if (type == "lines") {
        return Json{{"$schema", draft},
                    {"title", "LineFamily"},
                    {"type", "object"},
                    {"required", {"dirs"}},
                    {"properties", {{"dirs", {{"type", "array"}, {"items", int_vector}}}}}};
    }
    throw SchemaError("unknown schema type '" + type + "' (expected tiling, boxes, points or lines)");
}

} // namespace nset
