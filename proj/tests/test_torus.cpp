#include <doctest.h>

#include <random>

#include "nset/torus.hpp"
#include "oracles.hpp"

using namespace nset;

namespace {

std::vector<std::size_t> at(std::initializer_list<std::size_t> c) { return c; }

CellClassification classification(std::size_t n, std::size_t m, const std::vector<std::size_t>& colored, int color)
{
    TorusGrid grid(n, m);
    std::vector<int> colors(grid.size(), 0);
    for (auto c : colored) {
        colors[c] = color;
    }
    return CellClassification(grid, colors);
}

EdgeColoring all_white(std::size_t n, std::size_t m)
{
    TorusGrid grid(n, m);
    return EdgeColoring(grid, std::vector<int>(grid.edge_count(), 0));
}

EdgeCochain cochain_of(const GridTiling& t) { return edge_cochain(vertex_labels(normalize_tiling(t))); }

} // namespace

TEST_CASE("vertex_labels examples")
{
    const auto v1 = vertex_labels(GridTiling(1, 1));
    CHECK(v1.at(at({0})) == LatticeVector{0});
    CHECK(v1.at(at({1})) == LatticeVector{-1});

    const auto v2 = vertex_labels(GridTiling(2, 1));
    CHECK(v2.at(at({1, 1})) == LatticeVector{-1, -1});
    CHECK(v2.at(at({1, 0})) == LatticeVector{-1, 0});

    const auto v3 = vertex_labels(GridTiling(2, 2));
    CHECK(v3.at(at({1, 1})) == LatticeVector{0, 0});
    CHECK(v3.at(at({2, 1})) == LatticeVector{-1, 0});
    CHECK(v3.at(at({0, 2})) == LatticeVector{0, -1});
    CHECK(v3.at(at({2, 2})) == LatticeVector{-1, -1});

    CHECK_THROWS_AS(vertex_labels(GridTiling(1, 1, {LatticeVector{3}})), NotNormalized);
}

TEST_CASE("edge_cochain examples")
{
    const auto p1 = edge_cochain(vertex_labels(GridTiling(1, 1)));
    CHECK(p1.vector({0, 0}) == LatticeVector{-1});

    const auto p2 = edge_cochain(vertex_labels(GridTiling(2, 2)));
    const auto& g = p2.grid();
    CHECK(p2.vector({g.index(at({0, 0})), 0}) == LatticeVector{0, 0});
    CHECK(p2.vector({g.index(at({0, 1})), 1}) == LatticeVector{0, -1});
    CHECK(p2.vector({g.index(at({1, 0})), 0}) == LatticeVector{-1, 0});
    CHECK(p2.vector({g.index(at({1, 1})), 0}) == LatticeVector{-1, 0});

    const GridTiling shifted(2, 2, {{0, 0}, {0, 0}, {0, 0}, {1, 0}});
    const auto p3 = edge_cochain(vertex_labels(shifted));
    CHECK(verify_cocycle(p3));
    // edge (0,1)->(1,1): v(1,1) - v(0,1) = (1,0)
    CHECK(p3.vector({g.index(at({0, 1})), 0}) == LatticeVector{1, 0});
    // wrap edge (1,1)->(2,1): v(2,1) = u(0,1) - e_1, so (-1,0) - (1,0)
    CHECK(p3.vector({g.index(at({1, 1})), 0}) == LatticeVector{-2, 0});
}

TEST_CASE("edge_cochain rejects labelings that break the wrap identities")
{
    std::vector<LatticeVector> values(4, LatticeVector{0});
    values = {LatticeVector{0}, LatticeVector{0}, LatticeVector{-1}};
    CHECK_NOTHROW(edge_cochain(VertexLabeling(1, 2, values)));
    // (m+1)^n = 9 labels for n=2, m=2; breaking one facet copy
    std::vector<LatticeVector> v2;
    for (std::size_t i = 0; i < 9; ++i) {
        v2.push_back(LatticeVector{0, 0});
    }
    CHECK_NOTHROW(edge_cochain(VertexLabeling(2, 2, v2)));
    v2[2] = LatticeVector{0, 5}; // vertex (0,2) no longer matches (0,0) on its wrap edge
    v2[5] = LatticeVector{0, 0};
    CHECK_THROWS_AS(edge_cochain(VertexLabeling(2, 2, v2)), WrapMismatch);
}

TEST_CASE("verify_cocycle examples")
{
    auto psi = cochain_of(GridTiling(2, 3));
    CHECK(verify_cocycle(psi));
    psi.value({4, 0})[0] += 1;
    CHECK_FALSE(verify_cocycle(psi));
    CHECK(verify_cocycle(EdgeCochain(3, 2)));
}

TEST_CASE("loop gains and homotopy classes")
{
    std::mt19937_64 rng(23);
    const auto t = nset::testing::random_tiling(rng, 2, 3, 2);
    const auto psi = cochain_of(t);
    const auto& g = psi.grid();
    for (std::size_t l = 0; l < 2; ++l) {
        for (std::size_t start = 0; start < g.size(); ++start) {
            CHECK(loop_gain(psi, generator_loop(g, l, start)) == -1 * LatticeVector::unit(2, l));
        }
        CHECK(homotopy_class(psi, generator_loop(g, l)) == LatticeVector::unit(2, l));
        auto twice = generator_loop(g, l);
        const auto again = generator_loop(g, l);
        twice.insert(twice.end(), again.begin(), again.end());
        CHECK(homotopy_class(psi, twice) == 2 * LatticeVector::unit(2, l));
    }
    for (std::size_t corner = 0; corner < g.size(); ++corner) {
        CHECK(loop_gain(psi, face_loop(g, corner, 0, 1)).is_zero());
        CHECK(homotopy_class(psi, face_loop(g, corner, 0, 1)).is_zero());
    }
    auto both = generator_loop(g, 0);
    const auto second = generator_loop(g, 1);
    both.insert(both.end(), second.begin(), second.end());
    CHECK(loop_gain(psi, both) == LatticeVector{-1, -1});

    const std::vector<LoopStep> open{{0, 0, true}};
    CHECK_THROWS_AS(loop_gain(psi, open), NotClosed);

    CHECK_THROWS_AS(homotopy_class(EdgeCochain(2, 3), generator_loop(g, 0)), BadGauge);
}

TEST_CASE("color_edges examples")
{
    const auto c = color_edges(cochain_of(GridTiling(2, 2)));
    const auto& g = c.grid();
    CHECK(c.color({g.index(at({0, 0})), 0}) == 0);
    CHECK(c.color({g.index(at({1, 0})), 0}) == 1);
    CHECK(c.color({g.index(at({0, 1})), 1}) == 2);

    const GridTiling diag(2, 2, {{0, 0}, {1, 1}, {0, 0}, {0, 0}});
    CHECK_THROWS_AS(color_edges(cochain_of(diag)), NonAxialEdge);

    std::mt19937_64 rng(29);
    for (int i = 0; i < 50; ++i) {
        const auto t = nset::testing::random_tiling(rng, 1, 1 + i % 4, 3);
        const auto cls = classify_cells(color_edges(cochain_of(t)));
        for (auto col : cls.colors()) {
            CHECK((col == 0 || col == 1));
        }
    }
}

TEST_CASE("classify_cells examples")
{
    CHECK_THROWS_AS(classify_cells(color_edges(cochain_of(GridTiling(2, 1)))), MixedCell);
    const auto white = classify_cells(all_white(2, 3));
    for (auto col : white.colors()) {
        CHECK(col == 0);
    }
}

TEST_CASE("find_components uses face adjacency with torus wrap")
{
    const auto one = find_components(classification(2, 3, {4}, 1));
    REQUIRE(one.size() == 1);
    CHECK(one[0].cells == std::vector<std::size_t>{4});

    // ring of color-1 cells along direction 1 (cells (0,0),(1,0),(2,0))
    const auto ring = find_components(classification(2, 3, {0, 3, 6}, 1));
    REQUIRE(ring.size() == 1);
    CHECK(ring[0].cells.size() == 3);

    // (0,0) and (1,1) share only a vertex
    CHECK(find_components(classification(2, 3, {0, 4}, 1)).size() == 2);
    // (0,0) and (2,0) are neighbours across the wrap
    CHECK(find_components(classification(2, 3, {0, 6}, 1)).size() == 1);

    TorusGrid grid(2, 3);
    std::vector<int> colors(9, 0);
    colors[0] = 1;
    colors[1] = 2;
    const auto two = find_components(CellClassification(grid, colors));
    REQUIRE(two.size() == 2);
    CHECK(two[0].color == 1);
    CHECK(two[1].color == 2);
}

TEST_CASE("component_boundary examples")
{
    const auto comps = find_components(classification(2, 3, {4}, 1));
    const auto b = component_boundary(comps[0], all_white(2, 3));
    CHECK(b.faces.size() == 4);
    CHECK(b.all_white);

    std::vector<std::size_t> everything(9);
    for (std::size_t i = 0; i < 9; ++i) {
        everything[i] = i;
    }
    const auto whole = find_components(classification(2, 3, everything, 1));
    REQUIRE(whole.size() == 1);
    CHECK(component_boundary(whole[0], all_white(2, 3)).faces.empty());

    TorusGrid grid(2, 3);
    std::vector<int> edge_colors(grid.edge_count(), 0);
    edge_colors[grid.edge_id({4, 0})] = 1; // bottom edge of cell (1,1)
    CHECK_FALSE(component_boundary(comps[0], EdgeColoring(grid, edge_colors)).all_white);
}

TEST_CASE("gain_subgroup and classify_component")
{
    const auto psi = cochain_of(GridTiling(2, 3));
    const auto single = find_components(classification(2, 3, {4}, 1));
    CHECK(gain_subgroup(psi, single[0]).is_zero());
    CHECK(classify_component(psi, single[0]) == ComponentClass::Contractible);

    std::vector<std::size_t> everything(9);
    for (std::size_t i = 0; i < 9; ++i) {
        everything[i] = i;
    }
    const auto whole = find_components(classification(2, 3, everything, 1));
    CHECK(gain_subgroup(psi, whole[0]).is_full());
    CHECK(classify_component(psi, whole[0]) == ComponentClass::Essential);

    // A ring wrapping direction 1 only: its loops reach Z e_1 and nothing more,
    // which the dichotomy forbids for genuine data.
    const auto ring = find_components(classification(2, 3, {0, 3, 6}, 1));
    const auto sub = gain_subgroup(psi, ring[0]);
    CHECK(sub.rank() == 1);
    CHECK(sub.basis()[0] == LatticeVector{1, 0});
    CHECK_THROWS_AS(classify_component(psi, ring[0]), DichotomyViolation);
}

TEST_CASE("cochain invariants on random tilings (n<=3, m<=3, u in [-2,2])")
{
    std::mt19937_64 rng(31);
    for (int i = 0; i < 300; ++i) {
        const std::size_t n = 1 + i % 3;
        const std::size_t m = 1 + (i / 3) % 3;
        const auto t = normalize_tiling(nset::testing::random_tiling(rng, n, m, 2));
        const auto psi = edge_cochain(vertex_labels(t));
        CHECK(verify_cocycle(psi));
        const auto gains = generator_gains(psi);
        for (std::size_t l = 0; l < n; ++l) {
            CHECK(gains[l] == -1 * LatticeVector::unit(n, l));
        }
        const auto d = difference_set_tiling(t);
        for (std::size_t e = 0; e < psi.grid().edge_count(); ++e) {
            CHECK(d.contains(psi.vector(psi.grid().edge(e))));
        }
    }
}

TEST_CASE("no small tiling admits a valid coloring (n=2, m<=2, |u|<=1)")
{
    for (std::size_t m = 1; m <= 2; ++m) {
        nset::testing::for_each_tiling(2, m, 1, [&](const GridTiling& t) {
            const auto psi = edge_cochain(vertex_labels(t));
            bool failed = false;
            try {
                classify_cells(color_edges(psi));
            } catch (const NonAxialEdge&) {
                failed = true;
            } catch (const MixedCell&) {
                failed = true;
            }
            CHECK(failed);
            return true;
        });
    }
}
