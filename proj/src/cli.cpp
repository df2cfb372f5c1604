#include "nset/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "nset/dyadic.hpp"
#include "nset/json_io.hpp"
#include "nset/search.hpp"
#include "nset/symmetry.hpp"
#include "nset/tiling.hpp"
#include "nset/torus.hpp"

namespace nset {

namespace {

Json read_json(const std::string& path, std::istream& in)
{
    try {
        if (path == "-") {
            return Json::parse(in);
        }
        std::ifstream file(path);
        if (!file) {
            throw SchemaError("cannot open '" + path + "'");
        }
        return Json::parse(file);
    } catch (const Json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
}

/// Tiling or box union input, both accepted wherever a compact set is.
struct CompactInput {
    std::optional<GridTiling> tiling;
    std::optional<BoxUnion> boxes;

    std::size_t dim() const { return tiling ? tiling->dim() : boxes->dim(); }
    LatticeSet diffset() const { return tiling ? difference_set_tiling(*tiling) : difference_set_boxes(*boxes); }
    BoxUnion as_boxes() const { return tiling ? tiling_to_boxes(*tiling) : *boxes; }
};

CompactInput read_compact(const std::string& path, std::istream& in)
{
    const auto j = read_json(path, in);
    if (looks_like_tiling(j)) {
        return {tiling_from_json(j), std::nullopt};
    }
    if (looks_like_boxes(j)) {
        return {std::nullopt, boxes_from_json(j)};
    }
    throw SchemaError("input is neither a tiling (\"u\") nor a box union (\"boxes\")");
}

LineFamily read_lines(const std::string& spec, std::size_t dim, std::istream& in)
{
    if (spec == "axes") {
        return LineFamily::axes(dim);
    }
    auto lines = lines_from_json(read_json(spec, in));
    if (lines.dim() != dim) {
        throw SchemaError("line family dimension differs from the input dimension");
    }
    return lines;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

Json coords_json(const TorusGrid& grid, std::size_t index)
{
    Json a = Json::array();
    for (auto c : grid.coords(index)) {
        a.push_back(c);
    }
    return a;
}

Json topology_report(const GridTiling& input)
{
    const auto t = normalize_tiling(input);
    const auto psi = edge_cochain(vertex_labels(t));
    const auto& grid = psi.grid();

    Json gains = Json::array();
    for (const auto& g : generator_gains(psi)) {
        gains.push_back(to_json(g));
    }
    Json report{{"cocycle_ok", verify_cocycle(psi)}, {"generator_gains", std::move(gains)}};

    std::optional<EdgeColoring> coloring;
    std::optional<CellClassification> cls;
    try {
        coloring = color_edges(psi);
        cls = classify_cells(*coloring);
        report["coloring"] = "ok";
    } catch (const NonAxialEdge& e) {
        report["coloring"] = Json{{"non_axial_edge",
                                   {{"vertex", coords_json(grid, e.edge.vertex)},
                                    {"dir", e.edge.dir + 1},
                                    {"value", to_json(e.value)}}}};
    } catch (const MixedCell& e) {
        report["coloring"] = Json{{"mixed_cell", {{"cell", coords_json(grid, e.cell)}}}};
    }

    Json comps = Json::array();
    if (cls) {
        for (const auto& comp : find_components(*cls)) {
            const auto boundary = component_boundary(comp, *coloring);
            const auto sub = gain_subgroup(psi, comp);
            Json subgroup;
            if (sub.is_zero()) {
                subgroup = "0";
            } else if (sub.is_full()) {
                subgroup = "Z^n";
            } else {
                Json basis = Json::array();
                for (const auto& b : sub.basis()) {
                    basis.push_back(to_json(b));
                }
                subgroup = Json{{"basis", std::move(basis)}};
            }
            comps.push_back(Json{{"color", comp.color},
                                 {"size", comp.cells.size()},
                                 {"boundary_white", boundary.all_white},
                                 {"subgroup", std::move(subgroup)}});
        }
    }
    report["components"] = std::move(comps);
    return report;
}

struct SearchArgs {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t max_m = 0;
    std::int64_t bound = 1;
    std::string lines = "axes";
    std::string target;
    unsigned threads = 1;
    bool no_symmetry = false;
    bool timing = false;
};

void add_search_options(CLI::App* sub, SearchArgs& a)
{
    sub->add_option("--m", a.m, "Grid resolution (exactly this m)");
    sub->add_option("--max-m", a.max_m, "Try every resolution 1..max-m, stop at the first witness");
    sub->add_option("--bound", a.bound, "Largest absolute translation coordinate")->capture_default_str();
    sub->add_option("--threads", a.threads, "Worker threads")->capture_default_str();
    sub->add_flag("--no-symmetry", a.no_symmetry, "Disable symmetry reduction");
    sub->add_flag("--timing", a.timing, "Include elapsed_ms in the report");
}

int run_search_command(const SearchArgs& a, SearchSpec spec, std::ostream& out)
{
    spec.bound = a.bound;
    spec.threads = a.threads;
    spec.symmetry = !a.no_symmetry;
    if (a.m != 0 && a.max_m != 0) {
        throw CLI::ValidationError("--m and --max-m are mutually exclusive");
    }
    SearchReport report;
    if (a.m != 0) {
        spec.resolution = a.m;
        report = run_search(spec);
    } else {
        report = search_up_to(spec, a.max_m != 0 ? a.max_m : 1);
    }
    emit(out, to_json(report, a.timing));
    return report.outcome == Outcome::Witness ? k_exit_ok : k_exit_negative;
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in)
{
    CLI::App app{"Fundamental domains for Z^n as unions of translated grid cubes"};
    app.require_subcommand(0, 1);

    bool version = false;
    std::string schema_type;
    app.add_flag("--version", version, "Print the version");
    app.add_option("--schema", schema_type, "Print the JSON schema for tiling|boxes|points|lines");

    std::string input;
    auto* diffset = app.add_subcommand("diffset", "Integer points of K - K");
    diffset->add_option("input", input, "Tiling or box union JSON ('-' for stdin)")->required();

    std::string lines_spec = "axes";
    auto* verify = app.add_subcommand("verify", "Check confinement of K - K to a line family");
    verify->add_option("input", input, "Tiling or box union JSON ('-' for stdin)")->required();
    verify->add_option("--lines", lines_spec, "'axes' or a line family JSON file")->capture_default_str();

    unsigned max_level = k_default_max_level;
    unsigned window = k_default_window;
    auto* refine = app.add_subcommand("refine", "Dyadic refinement until the difference set stabilizes");
    refine->add_option("input", input, "Box union or tiling JSON ('-' for stdin)")->required();
    refine->add_option("--max-level", max_level, "Largest dyadic level")->capture_default_str();
    refine->add_option("--window", window, "Consecutive stable levels required")->capture_default_str();

    auto* topology = app.add_subcommand("topology", "Edge cochain, coloring and components of a tiling");
    topology->add_option("input", input, "Tiling JSON ('-' for stdin)")->required();

    auto* canon = app.add_subcommand("canon", "Canonical representative of a tiling's symmetry orbit");
    canon->add_option("input", input, "Tiling JSON ('-' for stdin)")->required();

    SearchArgs sargs;
    auto* search = app.add_subcommand("search", "Exhaustive bounded search over grid tilings");
    search->require_subcommand(1);
    auto* confined = search->add_subcommand("confined", "Look for a tiling whose K - K lies on the lines");
    confined->add_option("--n", sargs.n, "Dimension")->required();
    confined->add_option("--lines", sargs.lines, "'axes' or a line family JSON file")->capture_default_str();
    add_search_options(confined, sargs);
    auto* realize = search->add_subcommand("realize", "Look for a tiling with K - K equal to the target");
    realize->add_option("--target", sargs.target, "Lattice set JSON ('-' for stdin)")->required();
    add_search_options(realize, sargs);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return k_exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return k_exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return k_exit_usage;
    }

    try {
        if (version) {
            emit(out, Json{{"name", "nset"}, {"version", k_version}});
            return k_exit_ok;
        }
        if (!schema_type.empty()) {
            emit(out, schema_for(schema_type));
            return k_exit_ok;
        }
        if (diffset->parsed()) {
            emit(out, to_json(read_compact(input, in).diffset()));
            return k_exit_ok;
        }
        if (verify->parsed()) {
            const auto k = read_compact(input, in);
            const auto lines = read_lines(lines_spec, k.dim(), in);
            const auto d = k.diffset();
            std::optional<LatticeVector> offending;
            for (const auto& v : d) {
                if (!lines.contains(v)) {
                    offending = v; // keeps the lexicographically largest
                }
            }
            emit(out, Json{{"confined", !offending},
                           {"offending", offending ? to_json(*offending) : Json(nullptr)},
                           {"covers_torus", covers_torus(k.as_boxes())},
                           {"generates_lattice", generates_lattice(d)}});
            return offending ? k_exit_negative : k_exit_ok;
        }
        if (refine->parsed()) {
            const auto k = read_compact(input, in).as_boxes();
            try {
                emit(out, to_json(refine_until_stable(k, max_level, window)));
                return k_exit_ok;
            } catch (const NoStabilization& e) {
                emit(out, Json{{"N0", nullptr}, {"error", e.what()}, {"max_level", e.max_level()}});
                return k_exit_negative;
            }
        }
        if (topology->parsed()) {
            const auto j = read_json(input, in);
            emit(out, topology_report(tiling_from_json(j)));
            return k_exit_ok;
        }
        if (canon->parsed()) {
            emit(out, to_json(canonical_form(tiling_from_json(read_json(input, in)))));
            return k_exit_ok;
        }
        if (confined->parsed()) {
            SearchSpec spec;
            spec.dim = sargs.n;
            if (sargs.n == 0) {
                throw SchemaError("--n must be at least 1");
            }
            spec.mode = ConfinedMode{read_lines(sargs.lines, sargs.n, in)};
            return run_search_command(sargs, std::move(spec), out);
        }
        if (realize->parsed()) {
            SearchSpec spec;
            auto target = points_from_json(read_json(sargs.target, in));
            spec.dim = target.dim();
            spec.mode = RealizeMode{std::move(target)};
            return run_search_command(sargs, std::move(spec), out);
        }
        out << app.help();
        return k_exit_usage;
    } catch (const SchemaError& e) {
        err << "error: " << e.what() << '\n';
        return k_exit_usage;
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return k_exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return k_exit_usage;
    } catch (const std::overflow_error& e) {
        err << "error: " << e.what() << '\n';
        return k_exit_usage;
    }
}

} // namespace nset
