#include <doctest.h>

#include <sstream>

#include "nset/cli.hpp"
#include "nset/json_io.hpp"

using namespace nset;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args, const std::string& stdin_text = "")
{
    std::ostringstream out, err;
    std::istringstream in(stdin_text);
    const int code = dispatch(args, out, err, in);
    return {code, out.str(), err.str()};
}

const std::string trivial2 = R"({"n": 2, "m": 1, "u": [[0, 0]]})";

} // namespace

TEST_CASE("diffset on the trivial n=2 tiling")
{
    const auto r = run({"diffset", "-"}, trivial2);
    CHECK(r.code == k_exit_ok);
    const auto j = Json::parse(r.out);
    CHECK(j["points"].size() == 9);
    CHECK(j["points"][0] == Json::array({-1, -1}));
    CHECK(j["points"][8] == Json::array({1, 1}));
}

TEST_CASE("diffset accepts a box union")
{
    const auto r = run({"diffset", "-"}, R"({"n": 1, "boxes": [[["0/1", "1/2"]], [["7/2", "4/1"]]]})");
    CHECK(r.code == k_exit_ok);
    CHECK(Json::parse(r.out)["points"] == Json::parse("[[-4],[-3],[0],[3],[4]]"));
}

TEST_CASE("verify reports the offending point and exits 1")
{
    const auto r = run({"verify", "--lines", "axes", "-"}, trivial2);
    CHECK(r.code == k_exit_negative);
    const auto j = Json::parse(r.out);
    CHECK(j["confined"] == false);
    CHECK(j["offending"] == Json::array({1, 1}));
    CHECK(j["covers_torus"] == true);

    const auto ok = run({"verify", "-"}, R"({"n": 1, "m": 2, "u": [[0], [3]]})");
    CHECK(ok.code == k_exit_ok);
    CHECK(Json::parse(ok.out)["offending"].is_null());
}

TEST_CASE("search confined reports ExhaustedUnsat with exit 1")
{
    const auto r = run({"search", "confined", "--n", "2", "--m", "2", "--bound", "2"});
    CHECK(r.code == k_exit_negative);
    const auto j = Json::parse(r.out);
    CHECK(j["outcome"] == "ExhaustedUnsat");
    CHECK(j["bound_complete"] == true);
    CHECK_FALSE(j.contains("elapsed_ms"));
    CHECK(run({"search", "confined", "--n", "2", "--m", "2", "--bound", "2", "--timing"}).out.find("elapsed_ms") !=
          std::string::npos);
}

TEST_CASE("search realize finds a witness with exit 0")
{
    const auto r = run({"search", "realize", "--target", "-", "--max-m", "6", "--bound", "4"},
                       R"({"points": [[-3], [-2], [0], [2], [3]]})");
    CHECK(r.code == k_exit_ok);
    const auto j = Json::parse(r.out);
    CHECK(j["outcome"] == "Witness");
    const auto w = tiling_from_json(j["witness"]);
    CHECK(difference_set_tiling(w) == LatticeSet(1, {{-3}, {-2}, {0}, {2}, {3}}));
}

TEST_CASE("refine emits the level table")
{
    const auto r = run({"refine", "-"}, R"({"n": 1, "boxes": [[["0", "1"]]]})");
    CHECK(r.code == k_exit_ok);
    const auto j = Json::parse(r.out);
    CHECK(j["N0"] == 2);
    CHECK(j["exact_diffset"] == Json::parse("[[-1],[0],[1]]"));
    CHECK(j["levels"][0]["diffset"].size() == 7);

    const auto fail = run({"refine", "--max-level", "1", "-"}, R"({"n": 1, "boxes": [[["0", "1"]]]})");
    CHECK(fail.code == k_exit_negative);
}

TEST_CASE("topology report")
{
    const auto r = run({"topology", "-"}, trivial2);
    CHECK(r.code == k_exit_ok);
    const auto j = Json::parse(r.out);
    CHECK(j["cocycle_ok"] == true);
    CHECK(j["generator_gains"] == Json::parse("[[-1,0],[0,-1]]"));
    CHECK(j["coloring"].contains("mixed_cell"));

    const auto one = Json::parse(run({"topology", "-"}, R"({"n": 1, "m": 3, "u": [[0], [1], [2]]})").out);
    CHECK(one["coloring"] == "ok");
    REQUIRE(one["components"].size() >= 1);
    CHECK(one["components"][0]["subgroup"] == "Z^n");

    const auto diag = Json::parse(run({"topology", "-"}, R"({"n": 2, "m": 2, "u": [[0,0],[1,1],[0,0],[0,0]]})").out);
    CHECK(diag["coloring"].contains("non_axial_edge"));
}

TEST_CASE("canon output re-canonicalizes to itself")
{
    const auto r = run({"canon", "-"}, R"({"n": 2, "m": 2, "u": [[3,1],[1,0],[0,-1],[2,1]]})");
    CHECK(r.code == k_exit_ok);
    const auto again = run({"canon", "-"}, r.out);
    CHECK(again.out == r.out);
}

TEST_CASE("output is byte-deterministic")
{
    const std::vector<std::string> args{"search", "confined", "--n", "2", "--m", "3", "--bound", "2", "--threads", "4"};
    CHECK(run(args).out == run(args).out);
    CHECK(run({"diffset", "-"}, trivial2).out == run({"diffset", "-"}, trivial2).out);
}

TEST_CASE("usage and schema errors exit 2 without output")
{
    const auto bad = run({"diffset", "-"}, R"({"n": 2, "m": 2, "u": [[0, 0]]})");
    CHECK(bad.code == k_exit_usage);
    CHECK(bad.out.empty());
    CHECK_FALSE(bad.err.empty());
    CHECK(run({"diffset", "-"}, "not json").code == k_exit_usage);
    CHECK(run({"diffset", "/nonexistent/file.json"}).code == k_exit_usage);
    CHECK(run({"bogus"}).code == k_exit_usage);
    CHECK(run({"search", "confined", "--m", "2"}).code == k_exit_usage);
    CHECK(run({"search", "confined", "--n", "2", "--m", "2", "--max-m", "3"}).code == k_exit_usage);
    CHECK(run({"search", "realize", "--target", "-", "--m", "2"}, R"({"points": [[0], [1]]})").code ==
          k_exit_usage);
    CHECK(run({"verify", "--lines", "-", "-"}, trivial2).code == k_exit_usage);
    CHECK(run({"--schema", "widget"}).code == k_exit_usage);
}

TEST_CASE("version and schemas")
{
    CHECK(Json::parse(run({"--version"}).out)["version"] == k_version);
    for (const auto* type : {"tiling", "boxes", "points", "lines"}) {
        const auto r = run({"--schema", type});
        CHECK(r.code == k_exit_ok);
        CHECK(Json::parse(r.out)["type"] == "object");
    }
}
