#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nset {

/// Element of Z^n.
class LatticeVector {
public:
    LatticeVector() = default;
    explicit LatticeVector(std::size_t dim) : coords_(dim, 0) {}
    explicit LatticeVector(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}
    LatticeVector(std::initializer_list<std::int64_t> coords) : coords_(coords) {}

    static LatticeVector unit(std::size_t dim, std::size_t axis);

    std::size_t dim() const { return coords_.size(); }
    std::int64_t operator[](std::size_t i) const { return coords_[i]; }
    std::int64_t& operator[](std::size_t i) { return coords_[i]; }
    std::span<const std::int64_t> coords() const { return coords_; }

    bool is_zero() const;

    /// Index of the only nonzero coordinate, if there is exactly one.
    std::optional<std::size_t> axis() const;

    LatticeVector operator-() const;
    LatticeVector& operator+=(const LatticeVector& rhs);
    LatticeVector& operator-=(const LatticeVector& rhs);
    friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
    friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
    friend LatticeVector operator*(std::int64_t k, const LatticeVector& v);

    friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
    friend auto operator<=>(const LatticeVector&, const LatticeVector&) = default;

    std::string to_string() const;

private:
    std::vector<std::int64_t> coords_;
};

/// Finite set of lattice vectors of one dimension, kept sorted
/// lexicographically and free of duplicates.
class LatticeSet {
public:
    explicit LatticeSet(std::size_t dim) : dim_(dim) {}
    LatticeSet(std::size_t dim, std::vector<LatticeVector> elems);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    const std::vector<LatticeVector>& elems() const { return elems_; }
    auto begin() const { return elems_.begin(); }
    auto end() const { return elems_.end(); }

    bool contains(const LatticeVector& v) const;
    void insert(const LatticeVector& v);
    void merge(const LatticeSet& other);

    LatticeSet negated() const;
    bool is_symmetric() const;

    /// Largest absolute coordinate over all elements (0 for the empty set).
    std::int64_t max_abs_coord() const;

    bool subset_of(const LatticeSet& other) const;

    friend bool operator==(const LatticeSet&, const LatticeSet&) = default;

private:
    std::size_t dim_;
    std::vector<LatticeVector> elems_;
};

/// n linearly independent lines through the origin, each given by a
/// primitive direction whose first nonzero coordinate is positive.
class LineFamily {
public:
    /// Canonicalizes each direction (divide by gcd, fix sign). Throws
    /// std::invalid_argument for zero directions, a count different from the
    /// dimension, or linearly dependent directions.
    explicit LineFamily(std::vector<LatticeVector> dirs);

    static LineFamily axes(std::size_t dim);

    std::size_t dim() const { return dirs_.front().dim(); }
    const std::vector<LatticeVector>& dirs() const { return dirs_; }

    bool is_axes() const { return is_axes_; }

    /// True iff v is an integer multiple of one of the directions.
    bool contains(std::span<const std::int64_t> v) const;
    bool contains(const LatticeVector& v) const { return contains(v.coords()); }

private:
    std::vector<LatticeVector> dirs_;
    bool is_axes_ = false;
};

/// Primitive representative of the line through v: divided by the gcd of its
/// coordinates and with the first nonzero coordinate positive.
LatticeVector canonical_direction(const LatticeVector& v);

/// Subgroup of Z^n given by a row-style Hermite normal form basis: rows are
/// in echelon form, pivots positive, entries above a pivot reduced into
/// [0, pivot).
class Subgroup {
public:
    static Subgroup generated_by(std::size_t dim, std::span<const LatticeVector> gens);

    std::size_t dim() const { return dim_; }
    const std::vector<LatticeVector>& basis() const { return basis_; }
    std::size_t rank() const { return basis_.size(); }

    bool is_zero() const { return basis_.empty(); }
    /// Full rank and unit pivots, i.e. the whole of Z^n.
    bool is_full() const;

    friend bool operator==(const Subgroup&, const Subgroup&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<LatticeVector> basis_;
};

/// Integer determinant by fraction-free elimination.
std::int64_t determinant(std::span<const LatticeVector> rows);

} // namespace nset
