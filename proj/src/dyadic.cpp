#include "nset/dyadic.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace nset {

DyadicComplex::DyadicComplex(std::size_t dim, unsigned level, std::vector<IndexBox> blocks)
    : dim_(dim), level_(level), blocks_(std::move(blocks))
{
    if (blocks_.empty()) {
        throw std::invalid_argument("dyadic complex must be nonempty");
    }
    for (const auto& b : blocks_) {
        if (b.lo.size() != dim_ || b.hi.size() != dim_) {
            throw std::invalid_argument("dyadic index block of wrong dimension");
        }
        for (std::size_t l = 0; l < dim_; ++l) {
            if (b.lo[l] > b.hi[l]) {
                throw std::invalid_argument("empty dyadic index block");
            }
        }
    }
}

std::uint64_t DyadicComplex::cell_count() const
{
    // Union volume by coordinate compression.
    std::vector<std::vector<std::int64_t>> cuts(dim_);
    for (const auto& b : blocks_) {
        for (std::size_t l = 0; l < dim_; ++l) {
            cuts[l].push_back(b.lo[l]);
            cuts[l].push_back(b.hi[l] + 1);
        }
    }
    for (auto& c : cuts) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    std::uint64_t total = 0;
    std::vector<std::size_t> at(dim_, 0);
    while (true) {
        bool in_range = true;
        for (std::size_t l = 0; l < dim_; ++l) {
            in_range = in_range && at[l] + 1 < cuts[l].size();
        }
        if (in_range) {
            bool covered = std::any_of(blocks_.begin(), blocks_.end(), [&](const IndexBox& b) {
                for (std::size_t l = 0; l < dim_; ++l) {
                    const auto x = cuts[l][at[l]];
                    if (x < b.lo[l] || x > b.hi[l]) {
                        return false;
                    }
                }
                return true;
            });
            if (covered) {
                std::uint64_t vol = 1;
                for (std::size_t l = 0; l < dim_; ++l) {
                    vol *= static_cast<std::uint64_t>(cuts[l][at[l] + 1] - cuts[l][at[l]]);
                }
                total += vol;
            }
        }
        std::size_t l = dim_;
        while (l > 0) {
            --l;
            if (++at[l] + 1 < cuts[l].size()) {
                break;
            }
            at[l] = 0;
            if (l == 0) {
                return total;
            }
        }
    }
}

std::vector<LatticeVector> DyadicComplex::cells() const
{
    std::set<LatticeVector> out;
    for (const auto& b : blocks_) {
        LatticeVector j(b.lo);
        while (true) {
            out.insert(j);
            std::size_t l = dim_;
            bool done = true;
            while (l > 0) {
                --l;
                if (j[l] < b.hi[l]) {
                    ++j[l];
                    done = false;
                    break;
                }
                j[l] = b.lo[l];
            }
            if (done) {
                break;
            }
        }
    }
    return {out.begin(), out.end()};
}

bool DyadicComplex::contains_cell(const LatticeVector& j) const
{
    return std::any_of(blocks_.begin(), blocks_.end(), [&](const IndexBox& b) {
        for (std::size_t l = 0; l < dim_; ++l) {
            if (j[l] < b.lo[l] || j[l] > b.hi[l]) {
                return false;
            }
        }
        return true;
    });
}

BoxUnion DyadicComplex::to_boxes() const
{
    const std::int64_t scale = std::int64_t{1} << level_;
    std::vector<Box> boxes;
    for (const auto& b : blocks_) {
        Box box;
        for (std::size_t l = 0; l < dim_; ++l) {
            box.push_back({Rational(b.lo[l], scale), Rational(checked_add(b.hi[l], 1), scale)});
        }
        boxes.push_back(std::move(box));
    }
    return BoxUnion(dim_, std::move(boxes));
}

DyadicComplex dyadic_cover(const BoxUnion& k, unsigned level)
{
    if (level > 60) {
        throw std::invalid_argument("dyadic level too large");
    }
    const Rational scale(std::int64_t{1} << level);
    std::vector<DyadicComplex::IndexBox> blocks;
    for (const auto& box : k.boxes()) {
        DyadicComplex::IndexBox b;
        for (const auto& iv : box) {
            // [j, j+1] meets [lo, hi] (scaled) iff lo - 1 <= j <= hi.
            b.lo.push_back(checked_sub((iv.lo * scale).ceil(), 1));
            b.hi.push_back((iv.hi * scale).floor());
        }
        blocks.push_back(std::move(b));
    }
    return DyadicComplex(k.dim(), level, std::move(blocks));
}

NoStabilization::NoStabilization(unsigned max_level)
    : std::runtime_error("difference set did not stabilize by level " + std::to_string(max_level)),
      max_level_(max_level)
{
}

RefineReport refine_until_stable(const BoxUnion& k, unsigned max_level, unsigned window)
{
    window = std::max(window, 1u);
    RefineReport report{0, difference_set_boxes(k), {}, false};
    bool in_run = false;
    unsigned run_start = 0;
    for (unsigned level = 0; level <= max_level; ++level) {
        const auto complex = dyadic_cover(k, level);
        auto diff = difference_set_boxes(complex.to_boxes());
        const bool equal = diff == report.exact_diffset;
        report.levels.push_back({level, complex.cell_count(), std::move(diff)});
        if (!equal) {
            in_run = false;
            continue;
        }
        if (!in_run) {
            in_run = true;
            run_start = level;
        }
        if (level - run_start + 1 >= window) {
            report.window_verified = true;
            break;
        }
    }
    if (!in_run) {
        throw NoStabilization(max_level);
    }
    report.stable_level = run_start;
    return report;
}

} // namespace nset
