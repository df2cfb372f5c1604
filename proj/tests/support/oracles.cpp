#include "oracles.hpp"

#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "nset/torus.hpp"

namespace nset::testing {

namespace {

using Ints = std::vector<std::int64_t>;

std::int64_t fdiv(std::int64_t a, std::int64_t b)
{
    std::int64_t q = a / b;
    return (a % b != 0 && a < 0) ? q - 1 : q;
}

std::int64_t cdiv(std::int64_t a, std::int64_t b) { return -fdiv(-a, b); }

std::int64_t raster_scale(const BoxUnion& k)
{
    std::int64_t l = 1;
    for (const auto& b : k.boxes()) {
        for (const auto& iv : b) {
            l = std::lcm(l, iv.lo.den());
            l = std::lcm(l, iv.hi.den());
        }
    }
    return 2 * l;
}

// Odometer over the integer box [lo, hi] (inclusive).
bool step(Ints& p, const Ints& lo, const Ints& hi)
{
    for (std::size_t i = p.size(); i-- > 0;) {
        if (p[i] < hi[i]) {
            ++p[i];
            return true;
        }
        p[i] = lo[i];
    }
    return false;
}

bool on_line(const LatticeVector& v, const LatticeVector& d)
{
    // v is a multiple of d iff every 2x2 minor vanishes.
    for (std::size_t i = 0; i < v.dim(); ++i) {
        for (std::size_t j = i + 1; j < v.dim(); ++j) {
            if (v[i] * d[j] != v[j] * d[i]) {
                return false;
            }
        }
    }
    return true;
}

bool own_confined(const LatticeSet& a, const LineFamily& lines)
{
    for (const auto& v : a) {
        bool ok = v.is_zero();
        for (const auto& d : lines.dirs()) {
            ok = ok || on_line(v, d);
        }
        if (!ok) {
            return false;
        }
    }
    return true;
}

} // namespace

LatticeSet raster_diffset(const BoxUnion& k)
{
    const std::size_t n = k.dim();
    const std::int64_t s = raster_scale(k);
    std::map<Ints, std::set<Ints>> buckets;
    for (const auto& b : k.boxes()) {
        Ints lo(n), hi(n);
        bool empty = false;
        for (std::size_t i = 0; i < n; ++i) {
            lo[i] = cdiv(b[i].lo.num() * s, b[i].lo.den());
            hi[i] = fdiv(b[i].hi.num() * s, b[i].hi.den());
            empty = empty || lo[i] > hi[i];
        }
        if (empty) {
            continue;
        }
        Ints p = lo;
        do {
            Ints residue(n), whole(n);
            for (std::size_t i = 0; i < n; ++i) {
                whole[i] = fdiv(p[i], s);
                residue[i] = p[i] - whole[i] * s;
            }
            buckets[residue].insert(whole);
        } while (step(p, lo, hi));
    }
    std::set<Ints> diffs;
    for (const auto& [residue, wholes] : buckets) {
        for (const auto& a : wholes) {
            for (const auto& c : wholes) {
                Ints d(n);
                for (std::size_t i = 0; i < n; ++i) {
                    d[i] = a[i] - c[i];
                }
                diffs.insert(d);
            }
        }
    }
    std::vector<LatticeVector> out;
    for (const auto& d : diffs) {
        out.emplace_back(d);
    }
    return LatticeSet(n, std::move(out));
}

bool raster_covers_torus(const BoxUnion& k)
{
    const std::size_t n = k.dim();
    const std::int64_t s = raster_scale(k);
    // Midpoint of elementary cell c is (2c + 1) / (2s).
    Ints c(n, 0), lo(n, 0), hi(n, s - 1);
    do {
        bool covered = false;
        for (const auto& b : k.boxes()) {
            bool inside = true;
            for (std::size_t i = 0; i < n && inside; ++i) {
                // exists t: lo <= (2c+1)/(2s) + t <= hi
                const std::int64_t x = 2 * c[i] + 1;
                const std::int64_t den = 2 * s;
                const std::int64_t tlo = cdiv(b[i].lo.num() * den - x * b[i].lo.den(), b[i].lo.den() * den);
                const std::int64_t thi = fdiv(b[i].hi.num() * den - x * b[i].hi.den(), b[i].hi.den() * den);
                inside = tlo <= thi;
            }
            if (inside) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            return false;
        }
    } while (step(c, lo, hi));
    return true;
}

void for_each_tiling(std::size_t dim, std::size_t m, std::int64_t bound,
                     const std::function<bool(const GridTiling&)>& visit)
{
    GridTiling t(dim, m);
    const std::size_t free = (t.cell_count() - 1) * dim;
    Ints vals(free, -bound), lo(free, -bound), hi(free, bound);
    do {
        std::vector<LatticeVector> us{LatticeVector(dim)};
        for (std::size_t c = 1; c < t.cell_count(); ++c) {
            us.emplace_back(Ints(vals.begin() + (c - 1) * dim, vals.begin() + c * dim));
        }
        if (!visit(GridTiling(dim, m, std::move(us)))) {
            return;
        }
    } while (free > 0 && step(vals, lo, hi));
}

NaiveResult naive_search(const SearchSpec& spec)
{
    NaiveResult r;
    for_each_tiling(spec.dim, spec.resolution, spec.bound, [&](const GridTiling& t) {
        ++r.assignments;
        const auto d = difference_set_boxes(tiling_to_boxes(t));
        bool ok = false;
        if (const auto* c = std::get_if<ConfinedMode>(&spec.mode)) {
            ok = own_confined(d, c->lines);
        } else {
            ok = d == std::get<RealizeMode>(spec.mode).target;
        }
        if (ok) {
            ++r.witnesses;
            if (!r.first) {
                r.first = t;
            }
        }
        return true;
    });
    return r;
}

std::uint64_t for_each_axial_cocycle(std::size_t dim, std::size_t m, std::int64_t max_step,
                                     const std::function<void(const GridTiling&)>& visit)
{
    const TorusGrid grid(dim, m);
    std::vector<LatticeVector> v(grid.size(), LatticeVector(dim));
    std::uint64_t count = 0;

    auto small_axial = [&](const LatticeVector& x) {
        if (x.is_zero()) {
            return true;
        }
        const auto a = x.axis();
        return a && std::abs(x[*a]) <= max_step;
    };
    // All edges whose later endpoint (in index order) is `j` must be axial.
    auto edges_ok = [&](std::size_t j) {
        const auto cj = grid.coords(j);
        for (std::size_t d = 0; d < dim; ++d) {
            if (cj[d] > 0) {
                if (!small_axial(v[j] - v[grid.shift(j, d, -1)])) {
                    return false;
                }
            }
            if (cj[d] == m - 1) {
                // wrap edge j -> j + e_d, whose head label carries -e_d
                const LatticeVector head = v[grid.shift(j, d, 1)] - LatticeVector::unit(dim, d);
                if (!small_axial(head - v[j])) {
                    return false;
                }
            }
        }
        return true;
    };

    std::function<void(std::size_t)> dfs = [&](std::size_t j) {
        if (j == grid.size()) {
            ++count;
            visit(GridTiling(dim, m, v));
            return;
        }
        const auto cj = grid.coords(j);
        std::size_t pred_dir = 0;
        while (cj[pred_dir] == 0) {
            ++pred_dir;
        }
        const LatticeVector base = v[grid.shift(j, pred_dir, -1)];
        std::vector<LatticeVector> steps{LatticeVector(dim)};
        for (std::size_t a = 0; a < dim; ++a) {
            for (std::int64_t k = 1; k <= max_step; ++k) {
                steps.push_back(k * LatticeVector::unit(dim, a));
                steps.push_back(-k * LatticeVector::unit(dim, a));
            }
        }
        for (const auto& s : steps) {
            v[j] = base + s;
            if (edges_ok(j)) {
                dfs(j + 1);
            }
        }
    };
    if (edges_ok(0)) {
        dfs(1);
    }
    return count;
}

GridTiling random_tiling(std::mt19937_64& rng, std::size_t dim, std::size_t m, std::int64_t bound)
{
    std::uniform_int_distribution<std::int64_t> coord(-bound, bound);
    GridTiling t(dim, m);
    std::vector<LatticeVector> us;
    for (std::size_t c = 0; c < t.cell_count(); ++c) {
        LatticeVector u(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            u[i] = coord(rng);
        }
        us.push_back(u);
    }
    return GridTiling(dim, m, std::move(us));
}

BoxUnion random_boxes(std::mt19937_64& rng, std::size_t dim, std::size_t count,
                      const std::vector<std::int64_t>& dens, std::int64_t span, std::int64_t max_width)
{
    std::uniform_int_distribution<std::size_t> pick(0, dens.size() - 1);
    std::vector<Box> boxes;
    for (std::size_t b = 0; b < count; ++b) {
        Box box;
        for (std::size_t i = 0; i < dim; ++i) {
            const std::int64_t d1 = dens[pick(rng)];
            const std::int64_t d2 = dens[pick(rng)];
            std::uniform_int_distribution<std::int64_t> lo_num(-span * d1, span * d1);
            const Rational lo(lo_num(rng), d1);
            const std::int64_t first = (lo * Rational(d2)).ceil();
            const std::int64_t last = ((lo + Rational(max_width)) * Rational(d2)).floor();
            std::uniform_int_distribution<std::int64_t> hi_num(first, last);
            box.push_back({lo, Rational(hi_num(rng), d2)});
        }
        boxes.push_back(std::move(box));
    }
    return BoxUnion(dim, std::move(boxes));
}

} // namespace nset::testing
