#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nset/lattice.hpp"
#include "nset/tiling.hpp"

namespace nset {

/// Finite set of level-N dyadic cubes [j/2^N, (j+1)/2^N]^n.
///
/// Stored as a list of (possibly overlapping) integer index boxes; the cell
/// set is their union. `cells()` expands it for small complexes.
class DyadicComplex {
public:
    struct IndexBox {
        std::vector<std::int64_t> lo;
        std::vector<std::int64_t> hi; // inclusive
    };

    DyadicComplex(std::size_t dim, unsigned level, std::vector<IndexBox> blocks);

    std::size_t dim() const { return dim_; }
    unsigned level() const { return level_; }
    const std::vector<IndexBox>& blocks() const { return blocks_; }

    /// Number of distinct cells.
    std::uint64_t cell_count() const;

    /// Every distinct cell index, sorted. Intended for small complexes.
    std::vector<LatticeVector> cells() const;

    bool contains_cell(const LatticeVector& j) const;

    /// K_N as a box union: one box per index block, equal to the union of the
    /// cubes in that block.
    BoxUnion to_boxes() const;

private:
    std::size_t dim_;
    unsigned level_;
    std::vector<IndexBox> blocks_;
};

/// All level-N dyadic cubes meeting k (closed intersection).
DyadicComplex dyadic_cover(const BoxUnion& k, unsigned level);

class NoStabilization : public std::runtime_error {
public:
    explicit NoStabilization(unsigned max_level);
    unsigned max_level() const { return max_level_; }

private:
    unsigned max_level_;
};

struct RefineLevel {
    unsigned level;
    std::uint64_t cells;
    LatticeSet diffset;
};

struct RefineReport {
    unsigned stable_level; // N0
    LatticeSet exact_diffset;
    std::vector<RefineLevel> levels;
    /// True when D_N = D was observed on `window` consecutive levels
    /// starting at N0; false when the level cap cut the window short.
    bool window_verified;
};

inline constexpr unsigned k_default_max_level = 12;
inline constexpr unsigned k_default_window = 4;

/// Refines level by level until the cover's integer difference set equals the
/// exact one on `window` consecutive levels (or max_level is reached).
/// Throws NoStabilization if D_N != D at max_level.
RefineReport refine_until_stable(const BoxUnion& k, unsigned max_level = k_default_max_level,
                                 unsigned window = k_default_window);

} // namespace nset
