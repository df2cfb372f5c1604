#include "nset/symmetry.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace nset {

Symmetry Symmetry::identity(std::size_t dim)
{
    Symmetry g;
    g.perm.resize(dim);
    std::iota(g.perm.begin(), g.perm.end(), std::size_t{0});
    g.flip.assign(dim, false);
    g.shift.assign(dim, 0);
    return g;
}

LatticeVector Symmetry::apply_linear(const LatticeVector& v) const
{
    LatticeVector out(v.dim());
    for (std::size_t l = 0; l < v.dim(); ++l) {
        out[perm[l]] = flip[l] ? -v[l] : v[l];
    }
    return out;
}

LatticeSet Symmetry::apply_linear(const LatticeSet& a) const
{
    std::vector<LatticeVector> out;
    out.reserve(a.size());
    for (const auto& v : a) {
        out.push_back(apply_linear(v));
    }
    return LatticeSet(a.dim(), std::move(out));
}

bool Symmetry::has_linear_part() const
{
    for (std::size_t l = 0; l < perm.size(); ++l) {
        if (perm[l] != l || flip[l]) {
            return true;
        }
    }
    return false;
}

GridTiling apply_symmetry(const GridTiling& t, const Symmetry& g)
{
    const std::size_t n = t.dim();
    if (g.perm.size() != n || g.flip.size() != n || g.shift.size() != n) {
        throw std::invalid_argument("symmetry dimension mismatch");
    }
    const auto m = static_cast<std::int64_t>(t.resolution());
    GridTiling out(n, t.resolution());
    std::vector<std::size_t> image(n);
    std::vector<std::int64_t> image_u(n);
    for (std::size_t c = 0; c < t.cell_count(); ++c) {
        const auto j = t.cell_index(c);
        const auto u = t.u(c);
        for (std::size_t l = 0; l < n; ++l) {
            // Lower corner in units of 1/m.
            std::int64_t corner = checked_add(static_cast<std::int64_t>(j[l]), checked_mul(m, u[l]));
            if (g.flip[l]) {
                corner = checked_sub(-corner, 1);
            }
            const std::size_t k = g.perm[l];
            corner = checked_add(corner, g.shift[k]);
            image[k] = static_cast<std::size_t>(floor_mod(corner, m));
            image_u[k] = floor_div(corner, m);
        }
        auto dest = out.u(out.cell_number(image));
        std::copy(image_u.begin(), image_u.end(), dest.begin());
    }
    return normalize_tiling(out);
}

std::vector<Symmetry> symmetry_group(std::size_t dim, std::size_t resolution, bool linear)
{
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> p(dim);
    std::iota(p.begin(), p.end(), std::size_t{0});
    do {
        perms.push_back(p);
    } while (linear && std::next_permutation(p.begin(), p.end()));

    const std::size_t sign_patterns = linear ? (std::size_t{1} << dim) : 1;
    const std::size_t shifts = grid_cell_count(dim, resolution);

    std::vector<Symmetry> out;
    for (const auto& perm : perms) {
        for (std::size_t mask = 0; mask < sign_patterns; ++mask) {
            for (std::size_t s = 0; s < shifts; ++s) {
                Symmetry g;
                g.perm = perm;
                g.flip.resize(dim);
                g.shift.resize(dim);
                std::size_t rest = s;
                for (std::size_t l = dim; l > 0; --l) {
                    g.shift[l - 1] = static_cast<std::int64_t>(rest % resolution);
                    rest /= resolution;
                }
                for (std::size_t l = 0; l < dim; ++l) {
                    g.flip[l] = (mask >> l) & 1u;
                }
                out.push_back(std::move(g));
            }
        }
    }
    return out;
}

GridTiling canonical_form(const GridTiling& t)
{
    GridTiling best = normalize_tiling(t);
    for (const auto& g : symmetry_group(t.dim(), t.resolution())) {
        auto img = apply_symmetry(t, g);
        if (img.raw() < best.raw()) {
            best = std::move(img);
        }
    }
    return best;
}

} // namespace nset
