#include "nset/tiling.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace nset {

namespace {

constexpr std::size_t k_max_cells = std::size_t{1} << 24;

// Calls fn(point) for every point of the integer box prod [lo_i, hi_i].
template <typename Fn>
void for_each_point(const std::vector<std::int64_t>& lo, const std::vector<std::int64_t>& hi, Fn&& fn)
{
    const std::size_t n = lo.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (lo[i] > hi[i]) {
            return;
        }
    }
    LatticeVector p(lo);
    while (true) {
        fn(p);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (p[i] < hi[i]) {
                ++p[i];
                break;
            }
            p[i] = lo[i];
            if (i == 0) {
                return;
            }
        }
        if (n == 0) {
            return;
        }
    }
}

// Odometer over prod [0, sizes_i); returns false after the last tuple.
bool advance(std::vector<std::size_t>& at, const std::vector<std::size_t>& sizes)
{
    for (std::size_t l = at.size(); l > 0; --l) {
        if (++at[l - 1] < sizes[l - 1]) {
            return true;
        }
        at[l - 1] = 0;
    }
    return false;
}

} // namespace

BoxUnion::BoxUnion(std::size_t dim, std::vector<Box> boxes) : dim_(dim), boxes_(std::move(boxes))
{
    if (dim_ == 0) {
        throw std::invalid_argument("box union dimension must be at least 1");
    }
    if (boxes_.empty()) {
        throw std::invalid_argument("box union must contain at least one box");
    }
    for (const auto& b : boxes_) {
        if (b.size() != dim_) {
            throw std::invalid_argument("box has wrong number of intervals");
        }
        for (const auto& iv : b) {
            if (iv.hi < iv.lo) {
                throw std::invalid_argument("interval with lo > hi");
            }
        }
    }
}

std::size_t grid_cell_count(std::size_t dim, std::size_t resolution)
{
    if (dim == 0 || resolution == 0) {
        throw std::invalid_argument("grid tiling needs n >= 1 and m >= 1");
    }
    std::size_t cells = 1;
    for (std::size_t i = 0; i < dim; ++i) {
        if (cells > k_max_cells / resolution) {
            throw std::invalid_argument("grid tiling too large");
        }
        cells *= resolution;
    }
    return cells;
}

GridTiling::GridTiling(std::size_t dim, std::size_t resolution)
    : dim_(dim), m_(resolution), cells_(grid_cell_count(dim, resolution)), u_(cells_ * dim, 0)
{
}

GridTiling::GridTiling(std::size_t dim, std::size_t resolution, std::vector<LatticeVector> translations)
    : GridTiling(dim, resolution)
{
    if (translations.size() != cells_) {
        throw std::invalid_argument("grid tiling needs one translation per cell (" + std::to_string(cells_) +
                                    "), got " + std::to_string(translations.size()));
    }
    for (std::size_t c = 0; c < cells_; ++c) {
        if (translations[c].dim() != dim_) {
            throw std::invalid_argument("translation of wrong dimension at cell " + std::to_string(c));
        }
        std::copy(translations[c].coords().begin(), translations[c].coords().end(), u(c).begin());
    }
}

LatticeVector GridTiling::translation(std::size_t cell) const
{
    auto s = u(cell);
    return LatticeVector(std::vector<std::int64_t>(s.begin(), s.end()));
}

std::vector<LatticeVector> GridTiling::translations() const
{
    std::vector<LatticeVector> out;
    out.reserve(cells_);
    for (std::size_t c = 0; c < cells_; ++c) {
        out.push_back(translation(c));
    }
    return out;
}

std::vector<std::size_t> GridTiling::cell_index(std::size_t cell) const
{
    std::vector<std::size_t> j(dim_);
    for (std::size_t l = dim_; l > 0; --l) {
        j[l - 1] = cell % m_;
        cell /= m_;
    }
    return j;
}

std::size_t GridTiling::cell_number(std::span<const std::size_t> index) const
{
    std::size_t c = 0;
    for (auto j : index) {
        c = c * m_ + j;
    }
    return c;
}

bool GridTiling::is_normalized() const
{
    auto origin = u(0);
    return std::all_of(origin.begin(), origin.end(), [](std::int64_t c) { return c == 0; });
}

GridTiling normalize_tiling(const GridTiling& t)
{
    GridTiling out(t);
    const auto base = t.translation(0);
    for (std::size_t c = 0; c < t.cell_count(); ++c) {
        auto u = out.u(c);
        for (std::size_t l = 0; l < t.dim(); ++l) {
            u[l] = checked_sub(u[l], base[l]);
        }
    }
    return out;
}

BoxUnion tiling_to_boxes(const GridTiling& t)
{
    const auto m = static_cast<std::int64_t>(t.resolution());
    std::vector<Box> boxes;
    boxes.reserve(t.cell_count());
    for (std::size_t c = 0; c < t.cell_count(); ++c) {
        const auto j = t.cell_index(c);
        const auto u = t.u(c);
        Box b;
        for (std::size_t l = 0; l < t.dim(); ++l) {
            const auto jl = static_cast<std::int64_t>(j[l]);
            b.push_back({Rational(jl, m) + u[l], Rational(jl + 1, m) + u[l]});
        }
        boxes.push_back(std::move(b));
    }
    return BoxUnion(t.dim(), std::move(boxes));
}

LatticeSet integer_points_in_box_difference(const Box& b1, const Box& b2)
{
    if (b1.size() != b2.size()) {
        throw std::invalid_argument("box dimension mismatch");
    }
    const std::size_t n = b1.size();
    std::vector<std::int64_t> lo(n);
    std::vector<std::int64_t> hi(n);
    for (std::size_t l = 0; l < n; ++l) {
        lo[l] = (b1[l].lo - b2[l].hi).ceil();
        hi[l] = (b1[l].hi - b2[l].lo).floor();
    }
    std::vector<LatticeVector> pts;
    for_each_point(lo, hi, [&](const LatticeVector& p) { pts.push_back(p); });
    return LatticeSet(n, std::move(pts));
}

LatticeSet difference_set_boxes(const BoxUnion& k)
{
    LatticeSet out(k.dim());
    for (const auto& a : k.boxes()) {
        for (const auto& b : k.boxes()) {
            out.merge(integer_points_in_box_difference(a, b));
        }
    }
    return out;
}

std::vector<std::int64_t> cell_offsets(std::int64_t delta, std::size_t resolution)
{
    // t works iff (delta - 1)/m <= t <= (delta + 1)/m.
    const auto m = static_cast<std::int64_t>(resolution);
    std::vector<std::int64_t> out;
    for (std::int64_t t = -1; t <= 1; ++t) {
        if (delta - 1 <= m * t && m * t <= delta + 1) {
            out.push_back(t);
        }
    }
    return out;
}

LatticeSet difference_set_tiling(const GridTiling& t)
{
    const std::size_t n = t.dim();
    const auto m = t.resolution();
    std::vector<std::vector<std::size_t>> idx;
    for (std::size_t c = 0; c < t.cell_count(); ++c) {
        idx.push_back(t.cell_index(c));
    }
    std::set<LatticeVector> pts;
    std::vector<std::int64_t> lo(n);
    std::vector<std::int64_t> hi(n);
    for (std::size_t a = 0; a < t.cell_count(); ++a) {
        for (std::size_t b = 0; b < t.cell_count(); ++b) {
            bool empty = false;
            std::vector<std::vector<std::int64_t>> offs(n);
            for (std::size_t l = 0; l < n && !empty; ++l) {
                const auto delta = static_cast<std::int64_t>(idx[a][l]) - static_cast<std::int64_t>(idx[b][l]);
                offs[l] = cell_offsets(delta, m);
                empty = offs[l].empty();
            }
            if (empty) {
                continue;
            }
            // Offsets are contiguous, so the point set is an integer box.
            for (std::size_t l = 0; l < n; ++l) {
                const auto d = checked_sub(t.u(a)[l], t.u(b)[l]);
                lo[l] = d + offs[l].front();
                hi[l] = d + offs[l].back();
            }
            for_each_point(lo, hi, [&](const LatticeVector& p) { pts.insert(p); });
        }
    }
    return LatticeSet(n, std::vector<LatticeVector>(pts.begin(), pts.end()));
}

bool covers_torus(const BoxUnion& k)
{
    const std::size_t n = k.dim();
    const Rational one(1);

    // Each box reduced mod 1 splits into at most 2^n pieces inside [0,1]^n.
    std::vector<Box> pieces;
    std::vector<std::set<Rational>> cuts(n);
    for (auto& c : cuts) {
        c.insert(Rational(0));
        c.insert(one);
    }
    for (const auto& b : k.boxes()) {
        std::vector<std::vector<Interval>> per_axis(n);
        for (std::size_t l = 0; l < n; ++l) {
            const auto& iv = b[l];
            if (one <= iv.hi - iv.lo) {
                per_axis[l].push_back({Rational(0), one});
                continue;
            }
            const Rational shift(iv.lo.floor());
            const Rational lo = iv.lo - shift;
            const Rational hi = iv.hi - shift;
            if (hi <= one) {
                per_axis[l].push_back({lo, hi});
            } else {
                per_axis[l].push_back({lo, one});
                per_axis[l].push_back({Rational(0), hi - one});
            }
        }
        for (std::size_t l = 0; l < n; ++l) {
            for (const auto& iv : per_axis[l]) {
                cuts[l].insert(iv.lo);
                cuts[l].insert(iv.hi);
            }
        }
        std::vector<std::size_t> pick(n, 0);
        std::vector<std::size_t> sizes(n);
        for (std::size_t l = 0; l < n; ++l) {
            sizes[l] = per_axis[l].size();
        }
        do {
            Box piece;
            for (std::size_t l = 0; l < n; ++l) {
                piece.push_back(per_axis[l][pick[l]]);
            }
            pieces.push_back(std::move(piece));
        } while (advance(pick, sizes));
    }

    // Every open elementary cell between consecutive cuts must lie in some
    // piece; test its midpoint. Closed pieces then cover the closure.
    std::vector<std::vector<Rational>> mids(n);
    for (std::size_t l = 0; l < n; ++l) {
        std::vector<Rational> c(cuts[l].begin(), cuts[l].end());
        for (std::size_t i = 0; i + 1 < c.size(); ++i) {
            mids[l].push_back((c[i] + c[i + 1]) * Rational(1, 2));
        }
    }
    std::vector<std::size_t> at(n, 0);
    std::vector<std::size_t> sizes(n);
    for (std::size_t l = 0; l < n; ++l) {
        sizes[l] = mids[l].size();
    }
    do {
        bool covered = std::any_of(pieces.begin(), pieces.end(), [&](const Box& p) {
            for (std::size_t l = 0; l < n; ++l) {
                const auto& x = mids[l][at[l]];
                if (x < p[l].lo || p[l].hi < x) {
                    return false;
                }
            }
            return true;
        });
        if (!covered) {
            return false;
        }
    } while (advance(at, sizes));
    return true;
}

bool is_confined(const LatticeSet& a, const LineFamily& lines)
{
    if (a.dim() != lines.dim()) {
        throw std::invalid_argument("lattice set and line family differ in dimension");
    }
    return std::all_of(a.begin(), a.end(), [&](const LatticeVector& v) { return lines.contains(v); });
}

bool generates_lattice(const LatticeSet& a)
{
    return Subgroup::generated_by(a.dim(), a.elems()).is_full();
}

bool is_valid_target(const LatticeSet& a)
{
    return a.contains(LatticeVector(a.dim())) && a.is_symmetric() && generates_lattice(a);
}

} // namespace nset
