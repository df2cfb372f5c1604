#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>

#include "nset/lattice.hpp"
#include "nset/tiling.hpp"

namespace nset {

struct ConfinedMode {
    LineFamily lines;
};

struct RealizeMode {
    LatticeSet target;
};

struct SearchSpec {
    std::size_t dim = 2;
    std::size_t resolution = 1;
    std::variant<ConfinedMode, RealizeMode> mode = ConfinedMode{LineFamily::axes(2)};
    /// Largest absolute translation coordinate explored.
    std::int64_t bound = 1;
    unsigned threads = 1;
    bool symmetry = true;
};

enum class Outcome { Witness, ExhaustedUnsat };

/// A difference point that violated the mode's predicate, and the two cells
/// that produced it.
struct Conflict {
    std::size_t cell;
    std::size_t other;
    LatticeVector point;
};

struct SearchReport {
    Outcome outcome = Outcome::ExhaustedUnsat;
    std::optional<GridTiling> witness;
    std::size_t resolution = 0;
    /// Translation coordinates actually explored: [-value_bound, value_bound].
    std::int64_t value_bound = 0;
    std::uint64_t nodes = 0;
    std::uint64_t pruned = 0;
    std::chrono::milliseconds elapsed{0};
    /// The verdict covers every tiling with translations inside the value
    /// bound; nothing is claimed beyond it.
    bool bound_complete = true;
    std::optional<Conflict> first_conflict;
};

/// Throws std::invalid_argument for an inconsistent spec (dimension
/// mismatches, bound < 1, invalid realize target).
void validate(const SearchSpec& spec);

/// Depth-first search over normalized tilings of spec.resolution whose
/// difference set lies on spec's lines.
SearchReport search_confined(const SearchSpec& spec);

/// Same search, looking for a tiling whose difference set equals the target.
SearchReport search_realize(const SearchSpec& spec);

/// Dispatches on the spec's mode.
SearchReport run_search(const SearchSpec& spec);

/// Runs the search for m = 1..max_resolution and returns the first witness,
/// or the last report (with node counts summed over all m) if none exists.
SearchReport search_up_to(SearchSpec spec, std::size_t max_resolution);

} // namespace nset
