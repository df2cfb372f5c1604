#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nset/lattice.hpp"
#include "nset/tiling.hpp"

namespace nset {

// The unit cube subdivided into m^n cells is a cube complex on the torus
// T = R^n / Z^n. Torus vertices and cells are both indexed by {0..m-1}^n
// (row-major, like GridTiling cells); the torus edge (J, l) runs from vertex
// J to vertex J + e_l, coordinates taken mod m. The grid vertices of the
// closed cube are {0..m}^n.

struct TorusEdge {
    std::size_t vertex;
    std::size_t dir;

    friend bool operator==(const TorusEdge&, const TorusEdge&) = default;
    friend auto operator<=>(const TorusEdge&, const TorusEdge&) = default;
};

/// Upper face of `cell` orthogonal to `normal`: the face shared with
/// cell + e_normal.
struct TorusFace {
    std::size_t cell;
    std::size_t normal;

    friend bool operator==(const TorusFace&, const TorusFace&) = default;
    friend auto operator<=>(const TorusFace&, const TorusFace&) = default;
};

/// Index arithmetic on the m^n torus grid.
class TorusGrid {
public:
    TorusGrid(std::size_t dim, std::size_t resolution);

    std::size_t dim() const { return dim_; }
    std::size_t resolution() const { return m_; }
    std::size_t size() const { return count_; }
    std::size_t edge_count() const { return count_ * dim_; }

    std::vector<std::size_t> coords(std::size_t index) const;
    std::size_t index(std::span<const std::size_t> coords) const;
    /// index + step * e_dir, wrapped.
    std::size_t shift(std::size_t index, std::size_t dir, std::int64_t step) const;

    std::size_t edge_id(const TorusEdge& e) const { return e.vertex * dim_ + e.dir; }
    TorusEdge edge(std::size_t id) const { return {id / dim_, id % dim_}; }

    /// All n * 2^(n-1) edges of a cell.
    std::vector<TorusEdge> cell_edges(std::size_t cell) const;
    /// All (n-1) * 2^(n-2) edges of a face (empty in dimension 1).
    std::vector<TorusEdge> face_edges(const TorusFace& f) const;

    std::string edge_name(const TorusEdge& e) const;

private:
    std::size_t dim_;
    std::size_t m_;
    std::size_t count_;
    std::vector<std::size_t> stride_;
};

/// Integer labels on the (m+1)^n grid vertices of the closed unit cube.
class VertexLabeling {
public:
    VertexLabeling(std::size_t dim, std::size_t resolution, std::vector<LatticeVector> values);

    std::size_t dim() const { return dim_; }
    std::size_t resolution() const { return m_; }
    const std::vector<LatticeVector>& values() const { return values_; }

    const LatticeVector& at(std::span<const std::size_t> grid_coords) const;

private:
    std::size_t dim_;
    std::size_t m_;
    std::vector<LatticeVector> values_;
};

/// Z^n-valued labeling of torus edges.
class EdgeCochain {
public:
    EdgeCochain(std::size_t dim, std::size_t resolution);

    const TorusGrid& grid() const { return grid_; }
    std::size_t dim() const { return grid_.dim(); }

    std::span<const std::int64_t> value(const TorusEdge& e) const;
    std::span<std::int64_t> value(const TorusEdge& e);
    LatticeVector vector(const TorusEdge& e) const;

private:
    TorusGrid grid_;
    std::vector<std::int64_t> values_;
};

/// 0 = white, k in 1..n = color-k.
class EdgeColoring {
public:
    EdgeColoring(TorusGrid grid, std::vector<int> colors);

    const TorusGrid& grid() const { return grid_; }
    int color(const TorusEdge& e) const { return colors_[grid_.edge_id(e)]; }
    const std::vector<int>& colors() const { return colors_; }

private:
    TorusGrid grid_;
    std::vector<int> colors_;
};

/// Per-cell color, same encoding as EdgeColoring.
class CellClassification {
public:
    CellClassification(TorusGrid grid, std::vector<int> colors);

    const TorusGrid& grid() const { return grid_; }
    int color(std::size_t cell) const { return colors_[cell]; }
    const std::vector<int>& colors() const { return colors_; }

private:
    TorusGrid grid_;
    std::vector<int> colors_;
};

struct Component {
    int color;
    std::vector<std::size_t> cells; // sorted
};

struct ComponentBoundary {
    std::vector<TorusFace> faces; // sorted
    bool all_white;
};

/// Directed traversal of one torus edge, starting at `from`. A forward step
/// walks edge (from, dir); a backward step walks edge (from - e_dir, dir)
/// against its orientation.
struct LoopStep {
    std::size_t from;
    std::size_t dir;
    bool forward = true;
};

enum class ComponentClass { Contractible, Essential };

// Errors

class TopologyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotNormalized : public TopologyError {
public:
    NotNormalized();
};

class WrapMismatch : public TopologyError {
public:
    WrapMismatch(std::string first, std::string second);
};

class NotClosed : public TopologyError {
public:
    explicit NotClosed(std::size_t step);
};

class BadGauge : public TopologyError {
public:
    using TopologyError::TopologyError;
};

class NonAxialEdge : public TopologyError {
public:
    NonAxialEdge(TorusEdge edge, LatticeVector value, const std::string& name);
    TorusEdge edge;
    LatticeVector value;
};

class MixedCell : public TopologyError {
public:
    MixedCell(std::size_t cell, int first, int second);
    std::size_t cell;
};

class DichotomyViolation : public TopologyError {
public:
    explicit DichotomyViolation(Subgroup subgroup);
    Subgroup subgroup;
};

// Operations

/// Throws NotNormalized if u at the origin cell is not zero.
VertexLabeling vertex_labels(const GridTiling& t);

/// Throws WrapMismatch if two grid edges identified on the torus carry
/// different differences.
EdgeCochain edge_cochain(const VertexLabeling& v);

bool verify_cocycle(const EdgeCochain& psi);

/// Throws NotClosed unless consecutive steps chain up and the last step
/// returns to the start.
LatticeVector loop_gain(const EdgeCochain& psi, std::span<const LoopStep> path);

/// The m forward steps along direction `dir` starting at `start`.
std::vector<LoopStep> generator_loop(const TorusGrid& grid, std::size_t dir, std::size_t start = 0);

/// Boundary of the 2-face spanned by dirs a and b at `corner`.
std::vector<LoopStep> face_loop(const TorusGrid& grid, std::size_t corner, std::size_t a, std::size_t b);

/// Gains of the n generator loops through vertex 0.
std::vector<LatticeVector> generator_gains(const EdgeCochain& psi);

/// Homology class in H_1(T) = Z^n, i.e. minus the gain. Throws BadGauge
/// unless psi is a cocycle whose generator gains are -e_l.
LatticeVector homotopy_class(const EdgeCochain& psi, std::span<const LoopStep> path);

/// Throws NonAxialEdge on the first (lowest id) edge whose value is not on a
/// coordinate axis.
EdgeColoring color_edges(const EdgeCochain& psi);

/// Throws MixedCell when a cell carries two different non-white colors.
CellClassification classify_cells(const EdgeColoring& coloring);

/// Maximal face-connected monochromatic sets of non-white cells, ordered by
/// smallest cell.
std::vector<Component> find_components(const CellClassification& cls);

ComponentBoundary component_boundary(const Component& comp, const EdgeColoring& coloring);

/// Subgroup generated by gains of the fundamental cycles of the component's
/// closed 1-skeleton.
Subgroup gain_subgroup(const EdgeCochain& psi, const Component& comp);

/// Throws DichotomyViolation if the gain subgroup is neither {0} nor Z^n.
ComponentClass classify_component(const EdgeCochain& psi, const Component& comp);

} // namespace nset
