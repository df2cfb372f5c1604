#include "nset/search.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <set>
#include <stdexcept>
#include <thread>

#include "nset/symmetry.hpp"

namespace nset {

namespace {

constexpr std::size_t k_no_witness = std::numeric_limits<std::size_t>::max();

struct PairOffsets {
    std::size_t other;
    std::vector<std::int64_t> offsets; // count * n, flat
};

struct SubtreeResult {
    std::uint64_t nodes = 0;
    std::uint64_t pruned = 0;
    std::optional<Conflict> first_conflict;
    std::optional<GridTiling> witness;
};

class Engine {
public:
    explicit Engine(const SearchSpec& spec)
        : n_(spec.dim), m_(spec.resolution), cells_(grid_cell_count(spec.dim, spec.resolution)), spec_(spec)
    {
        if (const auto* r = std::get_if<RealizeMode>(&spec.mode)) {
            realize_ = true;
            target_size_ = r->target.size();
            radius_ = r->target.max_abs_coord();
            value_bound_ = std::min(spec.bound, radius_ + 1);
            side_ = static_cast<std::size_t>(2 * radius_ + 1);
            std::size_t slots = 1;
            for (std::size_t l = 0; l < n_; ++l) {
                slots *= side_;
            }
            in_target_.assign(slots, 0);
            for (const auto& v : r->target) {
                in_target_[slot(v.coords().data())] = 1;
            }
        } else {
            lines_ = &std::get<ConfinedMode>(spec.mode).lines;
            value_bound_ = spec.bound;
        }
        build_pairs();
        build_values();
    }

    std::int64_t value_bound() const { return value_bound_; }
    std::size_t cells() const { return cells_; }

    SearchReport run()
    {
        const auto start = std::chrono::steady_clock::now();
        SearchReport report;
        report.resolution = m_;
        report.value_bound = value_bound_;

        State base = fresh_state();
        std::optional<Conflict> self_conflict;
        if (!seed_self_pairs(base, self_conflict)) {
            report.first_conflict = self_conflict;
            report.elapsed = elapsed_since(start);
            return report;
        }
        if (cells_ == 1) {
            if (leaf_ok(base)) {
                report.outcome = Outcome::Witness;
                report.witness = GridTiling(n_, m_);
            } else {
                report.pruned = 1;
            }
            report.elapsed = elapsed_since(start);
            return report;
        }

        const auto roots = root_values();
        std::vector<SubtreeResult> results(roots.size());
        std::atomic<std::size_t> next{0};
        std::atomic<std::size_t> best{k_no_witness};
        auto worker = [&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= roots.size()) {
                    return;
                }
                if (i > best.load()) {
                    continue;
                }
                results[i] = explore(base, roots[i], i, best);
                if (results[i].witness) {
                    std::size_t cur = best.load();
                    while (i < cur && !best.compare_exchange_weak(cur, i)) {
                    }
                }
            }
        };
        const unsigned threads = std::max(1u, spec_.threads);
        if (threads == 1) {
            worker();
        } else {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < threads; ++t) {
                pool.emplace_back(worker);
            }
        }

        // Merge in sequential DFS order up to the first witness.
        for (auto& r : results) {
            report.nodes += r.nodes;
            report.pruned += r.pruned;
            if (!report.first_conflict && r.first_conflict) {
                report.first_conflict = r.first_conflict;
            }
            if (r.witness) {
                report.outcome = Outcome::Witness;
                report.witness = std::move(r.witness);
                break;
            }
        }
        report.elapsed = elapsed_since(start);
        return report;
    }

private:
    struct State {
        std::vector<std::int64_t> u;
        std::vector<std::uint32_t> counts;
        std::size_t covered = 0;
        std::vector<std::size_t> undo;
    };

    static std::chrono::milliseconds elapsed_since(std::chrono::steady_clock::time_point t0)
    {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    }

    State fresh_state() const
    {
        State s;
        s.u.assign(cells_ * n_, 0);
        if (realize_) {
            s.counts.assign(in_target_.size(), 0);
        }
        return s;
    }

    void build_pairs()
    {
        const GridTiling shape(n_, m_);
        std::vector<std::vector<std::size_t>> idx;
        for (std::size_t c = 0; c < cells_; ++c) {
            idx.push_back(shape.cell_index(c));
        }
        auto offsets_between = [&](std::size_t a, std::size_t b) {
            std::vector<std::vector<std::int64_t>> per_axis(n_);
            for (std::size_t l = 0; l < n_; ++l) {
                const auto delta = static_cast<std::int64_t>(idx[a][l]) - static_cast<std::int64_t>(idx[b][l]);
                per_axis[l] = cell_offsets(delta, m_);
                if (per_axis[l].empty()) {
                    return std::vector<std::int64_t>{};
                }
            }
            std::vector<std::int64_t> flat;
            std::vector<std::size_t> at(n_, 0);
            while (true) {
                for (std::size_t l = 0; l < n_; ++l) {
                    flat.push_back(per_axis[l][at[l]]);
                }
                std::size_t l = n_;
                while (l > 0 && ++at[l - 1] == per_axis[l - 1].size()) {
                    at[l - 1] = 0;
                    --l;
                }
                if (l == 0) {
                    return flat;
                }
            }
        };
        self_offsets_ = offsets_between(0, 0);
        pairs_.resize(cells_);
        for (std::size_t c = 0; c < cells_; ++c) {
            for (std::size_t o = 0; o < c; ++o) {
                auto flat = offsets_between(c, o);
                if (!flat.empty()) {
                    pairs_[c].push_back({o, std::move(flat)});
                }
            }
        }
    }

    void build_values()
    {
        std::vector<std::int64_t> x(n_, -value_bound_);
        while (true) {
            values_.insert(values_.end(), x.begin(), x.end());
            std::size_t l = n_;
            while (l > 0 && ++x[l - 1] > value_bound_) {
                x[l - 1] = -value_bound_;
                --l;
            }
            if (l == 0) {
                return;
            }
        }
    }

    std::size_t value_count() const { return values_.size() / n_; }
    const std::int64_t* value(std::size_t i) const { return values_.data() + i * n_; }

    std::size_t slot(const std::int64_t* p) const
    {
        std::size_t s = 0;
        for (std::size_t l = 0; l < n_; ++l) {
            s = s * side_ + static_cast<std::size_t>(p[l] + radius_);
        }
        return s;
    }

    bool admits(const std::int64_t* p) const
    {
        if (!realize_) {
            return lines_->contains(std::span<const std::int64_t>(p, n_));
        }
        for (std::size_t l = 0; l < n_; ++l) {
            if (p[l] < -radius_ || p[l] > radius_) {
                return false;
            }
        }
        return in_target_[slot(p)] != 0;
    }

    void cover(State& s, const std::int64_t* p) const
    {
        std::int64_t neg[16];
        std::vector<std::int64_t> neg_heap;
        std::int64_t* q = neg;
        if (n_ > 16) {
            neg_heap.resize(n_);
            q = neg_heap.data();
        }
        for (std::size_t l = 0; l < n_; ++l) {
            q[l] = -p[l];
        }
        for (const std::int64_t* v : {p, static_cast<const std::int64_t*>(q)}) {
            const auto k = slot(v);
            if (s.counts[k]++ == 0) {
                ++s.covered;
            }
            s.undo.push_back(k);
        }
    }

    void rollback(State& s, std::size_t mark) const
    {
        while (s.undo.size() > mark) {
            const auto k = s.undo.back();
            s.undo.pop_back();
            if (--s.counts[k] == 0) {
                --s.covered;
            }
        }
    }

    LatticeVector to_vector(const std::int64_t* p) const
    {
        return LatticeVector(std::vector<std::int64_t>(p, p + n_));
    }

    bool seed_self_pairs(State& s, std::optional<Conflict>& conflict) const
    {
        for (std::size_t i = 0; i < self_offsets_.size(); i += n_) {
            const std::int64_t* p = self_offsets_.data() + i;
            if (!admits(p)) {
                conflict = Conflict{0, 0, to_vector(p)};
                return false;
            }
            if (realize_) {
                cover(s, p);
            }
        }
        return true;
    }

    // Places value x at cell c and checks all pairs against earlier cells.
    bool assign(State& s, std::size_t c, const std::int64_t* x, std::optional<Conflict>& conflict) const
    {
        std::copy(x, x + n_, s.u.begin() + static_cast<std::ptrdiff_t>(c * n_));
        const std::size_t mark = s.undo.size();
        std::int64_t buf[16];
        std::vector<std::int64_t> heap;
        std::int64_t* p = buf;
        if (n_ > 16) {
            heap.resize(n_);
            p = heap.data();
        }
        for (const auto& pair : pairs_[c]) {
            const std::int64_t* w = s.u.data() + pair.other * n_;
            for (std::size_t i = 0; i < pair.offsets.size(); i += n_) {
                for (std::size_t l = 0; l < n_; ++l) {
                    p[l] = x[l] - w[l] + pair.offsets[i + l];
                }
                if (!admits(p)) {
                    if (realize_) {
                        rollback(s, mark);
                    }
                    if (!conflict) {
                        conflict = Conflict{c, pair.other, to_vector(p)};
                    }
                    return false;
                }
                if (realize_) {
                    cover(s, p);
                }
            }
        }
        return true;
    }

    bool leaf_ok(const State& s) const { return !realize_ || s.covered == target_size_; }

    bool dfs(State& s, std::size_t c, SubtreeResult& r, std::size_t index, const std::atomic<std::size_t>& best) const
    {
        if (c == cells_) {
            if (leaf_ok(s)) {
                std::vector<LatticeVector> us;
                for (std::size_t k = 0; k < cells_; ++k) {
                    us.push_back(to_vector(s.u.data() + k * n_));
                }
                r.witness = GridTiling(n_, m_, std::move(us));
                return true;
            }
            ++r.pruned;
            return false;
        }
        if (best.load(std::memory_order_relaxed) < index) {
            return true; // an earlier subtree already holds the reported witness
        }
        for (std::size_t i = 0; i < value_count(); ++i) {
            ++r.nodes;
            const std::size_t mark = s.undo.size();
            if (!assign(s, c, value(i), r.first_conflict)) {
                ++r.pruned;
                continue;
            }
            const bool stop = dfs(s, c + 1, r, index, best);
            rollback(s, mark);
            if (stop) {
                return true;
            }
        }
        return false;
    }

    SubtreeResult explore(const State& base, std::size_t root_value, std::size_t index,
                          const std::atomic<std::size_t>& best) const
    {
        SubtreeResult r;
        State s = base;
        r.nodes = 1;
        if (!assign(s, 1, value(root_value), r.first_conflict)) {
            r.pruned = 1;
            return r;
        }
        dfs(s, 2, r, index, best);
        return r;
    }

    // Values for cell 1, one per orbit of the subgroup that fixes cells 0
    // and 1, keeps every translation inside the value bound and preserves
    // the mode's predicate.
    std::vector<std::size_t> root_values() const
    {
        std::vector<std::size_t> all(value_count());
        for (std::size_t i = 0; i < all.size(); ++i) {
            all[i] = i;
        }
        if (!spec_.symmetry) {
            return all;
        }
        const GridTiling zero(n_, m_);
        std::vector<Symmetry> stabilizer;
        for (const auto& g : symmetry_group(n_, m_, true)) {
            if (!g.has_linear_part() && std::all_of(g.shift.begin(), g.shift.end(), [](auto s) { return s == 0; })) {
                continue;
            }
            if (apply_symmetry(zero, g) != zero || !preserves_mode(g) || !fixes_first_cells(g)) {
                continue;
            }
            stabilizer.push_back(g);
        }
        if (stabilizer.empty()) {
            return all;
        }
        std::vector<std::size_t> reps;
        for (auto i : all) {
            GridTiling t(n_, m_);
            std::copy(value(i), value(i) + n_, t.u(1).begin());
            const auto x = t.translation(1);
            bool least = true;
            for (const auto& g : stabilizer) {
                if (apply_symmetry(t, g).translation(1) < x) {
                    least = false;
                    break;
                }
            }
            if (least) {
                reps.push_back(i);
            }
        }
        return reps;
    }

    bool fixes_first_cells(const Symmetry& g) const { return image_cell(g, 0) == 0 && image_cell(g, 1) == 1; }

    std::size_t image_cell(const Symmetry& g, std::size_t cell) const
    {
        const GridTiling shape(n_, m_);
        const auto j = shape.cell_index(cell);
        const auto m = static_cast<std::int64_t>(m_);
        std::vector<std::size_t> out(n_);
        for (std::size_t l = 0; l < n_; ++l) {
            std::int64_t corner = static_cast<std::int64_t>(j[l]);
            if (g.flip[l]) {
                corner = -corner - 1;
            }
            const auto k = g.perm[l];
            out[k] = static_cast<std::size_t>(floor_mod(corner + g.shift[k], m));
        }
        return shape.cell_number(out);
    }

    bool preserves_mode(const Symmetry& g) const
    {
        if (realize_) {
            const auto& target = std::get<RealizeMode>(spec_.mode).target;
            return g.apply_linear(target) == target;
        }
        std::set<LatticeVector> before;
        std::set<LatticeVector> after;
        for (const auto& d : lines_->dirs()) {
            before.insert(d);
            after.insert(canonical_direction(g.apply_linear(d)));
        }
        return before == after;
    }

    std::size_t n_;
    std::size_t m_;
    std::size_t cells_;
    const SearchSpec& spec_;

    bool realize_ = false;
    const LineFamily* lines_ = nullptr;
    std::size_t target_size_ = 0;
    std::int64_t radius_ = 0;
    std::size_t side_ = 0;
    std::vector<std::uint8_t> in_target_;

    std::int64_t value_bound_ = 0;
    std::vector<std::int64_t> self_offsets_;
    std::vector<std::vector<PairOffsets>> pairs_;
    std::vector<std::int64_t> values_;
};

void reverify(const SearchSpec& spec, const SearchReport& report)
{
    if (!report.witness) {
        return;
    }
    const auto d = difference_set_tiling(*report.witness);
    bool ok = false;
    if (const auto* c = std::get_if<ConfinedMode>(&spec.mode)) {
        ok = is_confined(d, c->lines);
    } else {
        ok = d == std::get<RealizeMode>(spec.mode).target;
    }
    if (!ok) {
        throw std::logic_error("search witness failed re-verification");
    }
}

} // namespace

void validate(const SearchSpec& spec)
{
    if (spec.dim == 0 || spec.resolution == 0) {
        throw std::invalid_argument("search needs n >= 1 and m >= 1");
    }
    if (spec.bound < 1) {
        throw std::invalid_argument("search bound must be at least 1");
    }
    if (spec.bound > 1000) {
        throw std::invalid_argument("search bound too large");
    }
    if (const auto* c = std::get_if<ConfinedMode>(&spec.mode)) {
        if (c->lines.dim() != spec.dim) {
            throw std::invalid_argument("line family dimension differs from n");
        }
    } else {
        const auto& target = std::get<RealizeMode>(spec.mode).target;
        if (target.dim() != spec.dim) {
            throw std::invalid_argument("target dimension differs from n");
        }
        if (!is_valid_target(target)) {
            throw std::invalid_argument("target must contain 0, be symmetric and generate Z^n");
        }
    }
}

SearchReport run_search(const SearchSpec& spec)
{
    validate(spec);
    Engine engine(spec);
    auto report = engine.run();
    reverify(spec, report);
    return report;
}

SearchReport search_confined(const SearchSpec& spec)
{
    if (!std::holds_alternative<ConfinedMode>(spec.mode)) {
        throw std::invalid_argument("search_confined needs a confined-mode spec");
    }
    return run_search(spec);
}

SearchReport search_realize(const SearchSpec& spec)
{
    if (!std::holds_alternative<RealizeMode>(spec.mode)) {
        throw std::invalid_argument("search_realize needs a realize-mode spec");
    }
    return run_search(spec);
}

SearchReport search_up_to(SearchSpec spec, std::size_t max_resolution)
{
    SearchReport total;
    for (std::size_t m = 1; m <= max_resolution; ++m) {
        spec.resolution = m;
        auto r = run_search(spec);
        total.nodes += r.nodes;
        total.pruned += r.pruned;
        total.elapsed += r.elapsed;
        total.resolution = m;
        total.value_bound = r.value_bound;
        total.first_conflict = r.first_conflict;
        if (r.outcome == Outcome::Witness) {
            total.outcome = Outcome::Witness;
            total.witness = std::move(r.witness);
            return total;
        }
    }
    return total;
}

} // namespace nset
