#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nset/lattice.hpp"
#include "nset/rational.hpp"

namespace nset {

/// Closed interval [lo, hi] with exact endpoints.
struct Interval {
    Rational lo;
    Rational hi;

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Closed axis-aligned box, one interval per coordinate.
using Box = std::vector<Interval>;

/// Finite union of closed rational boxes in R^n.
class BoxUnion {
public:
    /// Throws std::invalid_argument when the list is empty, a box has the
    /// wrong number of intervals, or an interval has lo > hi.
    BoxUnion(std::size_t dim, std::vector<Box> boxes);

    std::size_t dim() const { return dim_; }
    const std::vector<Box>& boxes() const { return boxes_; }

    friend bool operator==(const BoxUnion&, const BoxUnion&) = default;

private:
    std::size_t dim_;
    std::vector<Box> boxes_;
};

/// The set of m^n subcubes of [0,1]^n, the cube with multi-index J translated
/// by the integer vector u(J).
///
/// Cells are numbered in row-major order (first coordinate slowest), which is
/// also the order of the "u" array in the JSON form.
class GridTiling {
public:
    /// All translations zero.
    GridTiling(std::size_t dim, std::size_t resolution);
    /// Throws std::invalid_argument unless translations has m^n entries of
    /// dimension n.
    GridTiling(std::size_t dim, std::size_t resolution, std::vector<LatticeVector> translations);

    std::size_t dim() const { return dim_; }
    std::size_t resolution() const { return m_; }
    std::size_t cell_count() const { return cells_; }

    std::span<const std::int64_t> u(std::size_t cell) const { return {u_.data() + cell * dim_, dim_}; }
    std::span<std::int64_t> u(std::size_t cell) { return {u_.data() + cell * dim_, dim_}; }
    LatticeVector translation(std::size_t cell) const;
    std::vector<LatticeVector> translations() const;

    /// Flat row-major storage of all translations, cell by cell.
    const std::vector<std::int64_t>& raw() const { return u_; }

    std::vector<std::size_t> cell_index(std::size_t cell) const;
    std::size_t cell_number(std::span<const std::size_t> index) const;

    bool is_normalized() const;

    friend bool operator==(const GridTiling&, const GridTiling&) = default;

private:
    std::size_t dim_;
    std::size_t m_;
    std::size_t cells_;
    std::vector<std::int64_t> u_;
};

/// m^n with a guard against absurd sizes.
std::size_t grid_cell_count(std::size_t dim, std::size_t resolution);

GridTiling normalize_tiling(const GridTiling& t);

BoxUnion tiling_to_boxes(const GridTiling& t);

/// Integer points of the Minkowski difference b1 - b2.
LatticeSet integer_points_in_box_difference(const Box& b1, const Box& b2);

/// (K - K) ∩ Z^n over all ordered pairs of boxes.
LatticeSet difference_set_boxes(const BoxUnion& k);

/// (B - B) ∩ Z^n for a grid tiling, computed from integer cell offsets only.
LatticeSet difference_set_tiling(const GridTiling& t);

/// Integer offsets t in {-1,0,1} such that the difference of two cells whose
/// indices differ by `delta` along one axis contains d + t, where d is the
/// difference of their translations. Closed cubes: touching counts.
std::vector<std::int64_t> cell_offsets(std::int64_t delta, std::size_t resolution);

/// Whether the boxes reduced mod Z^n cover the torus R^n / Z^n.
bool covers_torus(const BoxUnion& k);

bool is_confined(const LatticeSet& a, const LineFamily& lines);

/// Whether the integer span of a is all of Z^n.
bool generates_lattice(const LatticeSet& a);

/// 0 ∈ a, a = -a and a generates Z^n.
bool is_valid_target(const LatticeSet& a);

} // namespace nset
