#include "nset/torus.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>

namespace nset {

// TorusGrid

TorusGrid::TorusGrid(std::size_t dim, std::size_t resolution)
    : dim_(dim), m_(resolution), count_(grid_cell_count(dim, resolution)), stride_(dim)
{
    std::size_t s = 1;
    for (std::size_t l = dim_; l > 0; --l) {
        stride_[l - 1] = s;
        s *= m_;
    }
}

std::vector<std::size_t> TorusGrid::coords(std::size_t index) const
{
    std::vector<std::size_t> j(dim_);
    for (std::size_t l = 0; l < dim_; ++l) {
        j[l] = (index / stride_[l]) % m_;
    }
    return j;
}

std::size_t TorusGrid::index(std::span<const std::size_t> coords) const
{
    std::size_t c = 0;
    for (std::size_t l = 0; l < dim_; ++l) {
        c += (coords[l] % m_) * stride_[l];
    }
    return c;
}

std::size_t TorusGrid::shift(std::size_t index, std::size_t dir, std::int64_t step) const
{
    const auto m = static_cast<std::int64_t>(m_);
    const auto j = static_cast<std::int64_t>((index / stride_[dir]) % m_);
    const auto moved = static_cast<std::size_t>(floor_mod(j + step, m));
    return index - static_cast<std::size_t>(j) * stride_[dir] + moved * stride_[dir];
}

std::vector<TorusEdge> TorusGrid::cell_edges(std::size_t cell) const
{
    std::vector<TorusEdge> out;
    for (std::size_t l = 0; l < dim_; ++l) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << dim_); ++mask) {
            if (mask & (std::size_t{1} << l)) {
                continue;
            }
            std::size_t v = cell;
            for (std::size_t k = 0; k < dim_; ++k) {
                if (mask & (std::size_t{1} << k)) {
                    v = shift(v, k, 1);
                }
            }
            out.push_back({v, l});
        }
    }
    return out;
}

std::vector<TorusEdge> TorusGrid::face_edges(const TorusFace& f) const
{
    std::vector<TorusEdge> out;
    const std::size_t base = shift(f.cell, f.normal, 1);
    for (std::size_t l = 0; l < dim_; ++l) {
        if (l == f.normal) {
            continue;
        }
        for (std::size_t mask = 0; mask < (std::size_t{1} << dim_); ++mask) {
            if ((mask & (std::size_t{1} << l)) || (mask & (std::size_t{1} << f.normal))) {
                continue;
            }
            std::size_t v = base;
            for (std::size_t k = 0; k < dim_; ++k) {
                if (mask & (std::size_t{1} << k)) {
                    v = shift(v, k, 1);
                }
            }
            out.push_back({v, l});
        }
    }
    return out;
}

std::string TorusGrid::edge_name(const TorusEdge& e) const
{
    std::string s = "[";
    const auto j = coords(e.vertex);
    for (std::size_t l = 0; l < dim_; ++l) {
        s += (l ? "," : "") + std::to_string(j[l]);
    }
    return s + "]+e" + std::to_string(e.dir + 1);
}

// Value types

VertexLabeling::VertexLabeling(std::size_t dim, std::size_t resolution, std::vector<LatticeVector> values)
    : dim_(dim), m_(resolution), values_(std::move(values))
{
    if (values_.size() != grid_cell_count(dim_, m_ + 1)) {
        throw std::invalid_argument("vertex labeling needs (m+1)^n values");
    }
    for (const auto& v : values_) {
        if (v.dim() != dim_) {
            throw std::invalid_argument("vertex label of wrong dimension");
        }
    }
}

const LatticeVector& VertexLabeling::at(std::span<const std::size_t> grid_coords) const
{
    std::size_t idx = 0;
    for (auto j : grid_coords) {
        idx = idx * (m_ + 1) + j;
    }
    return values_[idx];
}

EdgeCochain::EdgeCochain(std::size_t dim, std::size_t resolution)
    : grid_(dim, resolution), values_(grid_.edge_count() * dim, 0)
{
}

std::span<const std::int64_t> EdgeCochain::value(const TorusEdge& e) const
{
    return {values_.data() + grid_.edge_id(e) * dim(), dim()};
}

std::span<std::int64_t> EdgeCochain::value(const TorusEdge& e)
{
    return {values_.data() + grid_.edge_id(e) * dim(), dim()};
}

LatticeVector EdgeCochain::vector(const TorusEdge& e) const
{
    auto s = value(e);
    return LatticeVector(std::vector<std::int64_t>(s.begin(), s.end()));
}

EdgeColoring::EdgeColoring(TorusGrid grid, std::vector<int> colors) : grid_(std::move(grid)), colors_(std::move(colors))
{
    if (colors_.size() != grid_.edge_count()) {
        throw std::invalid_argument("edge coloring size mismatch");
    }
}

CellClassification::CellClassification(TorusGrid grid, std::vector<int> colors)
    : grid_(std::move(grid)), colors_(std::move(colors))
{
    if (colors_.size() != grid_.size()) {
        throw std::invalid_argument("cell classification size mismatch");
    }
}

// Errors

NotNormalized::NotNormalized() : TopologyError("tiling is not normalized: u at the origin cell must be zero") {}

WrapMismatch::WrapMismatch(std::string first, std::string second)
    : TopologyError("wrap identity fails between grid edges " + first + " and " + second)
{
}

NotClosed::NotClosed(std::size_t step) : TopologyError("path is not closed at step " + std::to_string(step)) {}

NonAxialEdge::NonAxialEdge(TorusEdge e, LatticeVector v, const std::string& name)
    : TopologyError("edge " + name + " carries non-axial value " + v.to_string()), edge(e), value(std::move(v))
{
}

MixedCell::MixedCell(std::size_t c, int first, int second)
    : TopologyError("cell " + std::to_string(c) + " carries colors " + std::to_string(first) + " and " +
                    std::to_string(second)),
      cell(c)
{
}

DichotomyViolation::DichotomyViolation(Subgroup s)
    : TopologyError("component gain subgroup of rank " + std::to_string(s.rank()) + " is neither 0 nor Z^n"),
      subgroup(std::move(s))
{
}

// Operations

namespace {

std::string grid_edge_name(std::span<const std::size_t> g, std::size_t dir)
{
    std::string s = "<";
    for (std::size_t l = 0; l < g.size(); ++l) {
        s += (l ? "," : "") + std::to_string(g[l]);
    }
    return s + ">+e" + std::to_string(dir + 1);
}

bool next_grid_vertex(std::vector<std::size_t>& g, std::size_t limit)
{
    for (std::size_t l = g.size(); l > 0; --l) {
        if (++g[l - 1] <= limit) {
            return true;
        }
        g[l - 1] = 0;
    }
    return false;
}

} // namespace

VertexLabeling vertex_labels(const GridTiling& t)
{
    if (!t.is_normalized()) {
        throw NotNormalized();
    }
    const std::size_t n = t.dim();
    const std::size_t m = t.resolution();
    std::vector<LatticeVector> values;
    std::vector<std::size_t> g(n, 0);
    do {
        std::vector<std::size_t> inner(g);
        LatticeVector correction(n);
        for (std::size_t l = 0; l < n; ++l) {
            if (g[l] == m) {
                inner[l] = 0;
                correction[l] = 1;
            }
        }
        values.push_back(t.translation(t.cell_number(inner)) - correction);
    } while (next_grid_vertex(g, m));
    return VertexLabeling(n, m, std::move(values));
}

EdgeCochain edge_cochain(const VertexLabeling& v)
{
    const std::size_t n = v.dim();
    const std::size_t m = v.resolution();
    EdgeCochain psi(n, m);
    const auto& grid = psi.grid();
    std::vector<std::optional<std::vector<std::size_t>>> first_source(grid.edge_count());
    std::vector<std::size_t> g(n, 0);
    do {
        for (std::size_t l = 0; l < n; ++l) {
            if (g[l] == m) {
                continue;
            }
            std::vector<std::size_t> head(g);
            ++head[l];
            const LatticeVector diff = v.at(head) - v.at(g);
            const TorusEdge e{grid.index(g), l};
            auto& seen = first_source[grid.edge_id(e)];
            if (!seen) {
                seen = g;
                std::copy(diff.coords().begin(), diff.coords().end(), psi.value(e).begin());
            } else if (!std::equal(diff.coords().begin(), diff.coords().end(), psi.value(e).begin())) {
                throw WrapMismatch(grid_edge_name(*seen, l), grid_edge_name(g, l));
            }
        }
    } while (next_grid_vertex(g, m));
    return psi;
}

bool verify_cocycle(const EdgeCochain& psi)
{
    const auto& grid = psi.grid();
    const std::size_t n = grid.dim();
    for (std::size_t c = 0; c < grid.size(); ++c) {
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) {
                auto p1 = psi.value({c, a});
                auto p2 = psi.value({grid.shift(c, a, 1), b});
                auto p3 = psi.value({grid.shift(c, b, 1), a});
                auto p4 = psi.value({c, b});
                for (std::size_t i = 0; i < n; ++i) {
                    if (p1[i] + p2[i] - p3[i] - p4[i] != 0) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

LatticeVector loop_gain(const EdgeCochain& psi, std::span<const LoopStep> path)
{
    const auto& grid = psi.grid();
    LatticeVector gain(grid.dim());
    for (std::size_t i = 0; i < path.size(); ++i) {
        const auto& s = path[i];
        if (s.from >= grid.size() || s.dir >= grid.dim()) {
            throw std::invalid_argument("loop step outside the torus grid");
        }
        const std::size_t head = grid.shift(s.from, s.dir, s.forward ? 1 : -1);
        const std::size_t next = path[(i + 1) % path.size()].from;
        if (head != next) {
            throw NotClosed(i);
        }
        if (s.forward) {
            gain += psi.vector({s.from, s.dir});
        } else {
            gain -= psi.vector({head, s.dir});
        }
    }
    return gain;
}

std::vector<LoopStep> generator_loop(const TorusGrid& grid, std::size_t dir, std::size_t start)
{
    std::vector<LoopStep> out;
    std::size_t v = start;
    for (std::size_t i = 0; i < grid.resolution(); ++i) {
        out.push_back({v, dir, true});
        v = grid.shift(v, dir, 1);
    }
    return out;
}

std::vector<LoopStep> face_loop(const TorusGrid& grid, std::size_t corner, std::size_t a, std::size_t b)
{
    const std::size_t ca = grid.shift(corner, a, 1);
    const std::size_t cb = grid.shift(corner, b, 1);
    const std::size_t cab = grid.shift(ca, b, 1);
    return {{corner, a, true}, {ca, b, true}, {cab, a, false}, {cb, b, false}};
}

std::vector<LatticeVector> generator_gains(const EdgeCochain& psi)
{
    std::vector<LatticeVector> out;
    for (std::size_t l = 0; l < psi.dim(); ++l) {
        out.push_back(loop_gain(psi, generator_loop(psi.grid(), l)));
    }
    return out;
}

LatticeVector homotopy_class(const EdgeCochain& psi, std::span<const LoopStep> path)
{
    if (!verify_cocycle(psi)) {
        throw BadGauge("edge labeling is not a cocycle");
    }
    const auto gains = generator_gains(psi);
    for (std::size_t l = 0; l < gains.size(); ++l) {
        if (gains[l] != -LatticeVector::unit(psi.dim(), l)) {
            throw BadGauge("generator loop " + std::to_string(l + 1) + " has gain " + gains[l].to_string() +
                           ", expected -e" + std::to_string(l + 1));
        }
    }
    return -loop_gain(psi, path);
}

EdgeColoring color_edges(const EdgeCochain& psi)
{
    const auto& grid = psi.grid();
    std::vector<int> colors(grid.edge_count(), 0);
    for (std::size_t id = 0; id < grid.edge_count(); ++id) {
        const auto e = grid.edge(id);
        const auto v = psi.vector(e);
        if (v.is_zero()) {
            continue;
        }
        const auto axis = v.axis();
        if (!axis) {
            throw NonAxialEdge(e, v, grid.edge_name(e));
        }
        colors[id] = static_cast<int>(*axis) + 1;
    }
    return EdgeColoring(grid, std::move(colors));
}

CellClassification classify_cells(const EdgeColoring& coloring)
{
    const auto& grid = coloring.grid();
    std::vector<int> colors(grid.size(), 0);
    for (std::size_t c = 0; c < grid.size(); ++c) {
        for (const auto& e : grid.cell_edges(c)) {
            const int k = coloring.color(e);
            if (k == 0) {
                continue;
            }
            if (colors[c] != 0 && colors[c] != k) {
                throw MixedCell(c, colors[c], k);
            }
            colors[c] = k;
        }
    }
    return CellClassification(grid, std::move(colors));
}

std::vector<Component> find_components(const CellClassification& cls)
{
    const auto& grid = cls.grid();
    std::vector<bool> seen(grid.size(), false);
    std::vector<Component> out;
    for (std::size_t start = 0; start < grid.size(); ++start) {
        if (seen[start] || cls.color(start) == 0) {
            continue;
        }
        Component comp{cls.color(start), {}};
        std::deque<std::size_t> queue{start};
        seen[start] = true;
        while (!queue.empty()) {
            const auto c = queue.front();
            queue.pop_front();
            comp.cells.push_back(c);
            for (std::size_t l = 0; l < grid.dim(); ++l) {
                for (std::int64_t step : {-1, 1}) {
                    const auto nb = grid.shift(c, l, step);
                    if (!seen[nb] && cls.color(nb) == comp.color) {
                        seen[nb] = true;
                        queue.push_back(nb);
                    }
                }
            }
        }
        std::sort(comp.cells.begin(), comp.cells.end());
        out.push_back(std::move(comp));
    }
    return out;
}

ComponentBoundary component_boundary(const Component& comp, const EdgeColoring& coloring)
{
    const auto& grid = coloring.grid();
    auto inside = [&](std::size_t c) { return std::binary_search(comp.cells.begin(), comp.cells.end(), c); };
    std::set<TorusFace> faces;
    for (auto c : comp.cells) {
        for (std::size_t l = 0; l < grid.dim(); ++l) {
            if (!inside(grid.shift(c, l, 1))) {
                faces.insert({c, l});
            }
            const auto below = grid.shift(c, l, -1);
            if (!inside(below)) {
                faces.insert({below, l});
            }
        }
    }
    ComponentBoundary out{{faces.begin(), faces.end()}, true};
    for (const auto& f : out.faces) {
        for (const auto& e : grid.face_edges(f)) {
            if (coloring.color(e) != 0) {
                out.all_white = false;
            }
        }
    }
    return out;
}

Subgroup gain_subgroup(const EdgeCochain& psi, const Component& comp)
{
    const auto& grid = psi.grid();
    const std::size_t n = grid.dim();
    std::set<std::size_t> edge_ids;
    for (auto c : comp.cells) {
        for (const auto& e : grid.cell_edges(c)) {
            edge_ids.insert(grid.edge_id(e));
        }
    }
    // Incidence lists over the skeleton; each entry is (edge id, leaves via tail).
    std::map<std::size_t, std::vector<std::pair<std::size_t, bool>>> incident;
    for (auto id : edge_ids) {
        const auto e = grid.edge(id);
        incident[e.vertex].push_back({id, true});
        incident[grid.shift(e.vertex, e.dir, 1)].push_back({id, false});
    }
    std::vector<LatticeVector> gens;
    if (incident.empty()) {
        return Subgroup::generated_by(n, gens);
    }

    std::map<std::size_t, LatticeVector> potential;
    std::set<std::size_t> tree;
    const std::size_t root = incident.begin()->first;
    potential.emplace(root, LatticeVector(n));
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
        const auto x = queue.front();
        queue.pop_front();
        for (const auto& [id, from_tail] : incident[x]) {
            const auto e = grid.edge(id);
            const auto y = from_tail ? grid.shift(e.vertex, e.dir, 1) : e.vertex;
            if (potential.contains(y)) {
                continue;
            }
            const auto w = psi.vector(e);
            potential.emplace(y, from_tail ? potential.at(x) + w : potential.at(x) - w);
            tree.insert(id);
            queue.push_back(y);
        }
    }
    for (auto id : edge_ids) {
        if (tree.contains(id)) {
            continue;
        }
        const auto e = grid.edge(id);
        const auto head = grid.shift(e.vertex, e.dir, 1);
        gens.push_back(potential.at(e.vertex) + psi.vector(e) - potential.at(head));
    }
    return Subgroup::generated_by(n, gens);
}

ComponentClass classify_component(const EdgeCochain& psi, const Component& comp)
{
    auto s = gain_subgroup(psi, comp);
    if (s.is_zero()) {
        return ComponentClass::Contractible;
    }
    if (s.is_full()) {
        return ComponentClass::Essential;
    }
    throw DichotomyViolation(std::move(s));
}

} // namespace nset
