#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "nset/lattice.hpp"
#include "nset/tiling.hpp"

namespace nset {

/// Affine symmetry of R^n that maps grid tilings of resolution m to grid
/// tilings of resolution m without changing their difference set beyond a
/// signed coordinate permutation:
///
///   x  ->  P * S * x + shift / m
///
/// where S flips the coordinates with flip[l] set and P sends coordinate l to
/// coordinate perm[l]. The shift is a torus translation by whole cells.
struct Symmetry {
    std::vector<std::size_t> perm;
    std::vector<bool> flip;
    std::vector<std::int64_t> shift;

    static Symmetry identity(std::size_t dim);

    /// Linear part applied to a lattice vector (translation dropped).
    LatticeVector apply_linear(const LatticeVector& v) const;
    LatticeSet apply_linear(const LatticeSet& a) const;

    bool has_linear_part() const;
};

/// Image of a tiling, normalized so that u at the origin cell is zero.
GridTiling apply_symmetry(const GridTiling& t, const Symmetry& g);

/// Every element of the group: n! permutations x 2^n sign patterns x m^n
/// cell shifts. When linear is false only the m^n shifts are produced.
std::vector<Symmetry> symmetry_group(std::size_t dim, std::size_t resolution, bool linear = true);

/// Lexicographically least normalized image of t over the full group.
GridTiling canonical_form(const GridTiling& t);

} // namespace nset
