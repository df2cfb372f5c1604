#include "nset/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "nset/rational.hpp"

namespace nset {

LatticeVector LatticeVector::unit(std::size_t dim, std::size_t axis)
{
    LatticeVector v(dim);
    v[axis] = 1;
    return v;
}

bool LatticeVector::is_zero() const
{
    return std::all_of(coords_.begin(), coords_.end(), [](std::int64_t c) { return c == 0; });
}

std::optional<std::size_t> LatticeVector::axis() const
{
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i] != 0) {
            if (found) {
                return std::nullopt;
            }
            found = i;
        }
    }
    return found;
}

LatticeVector LatticeVector::operator-() const
{
    LatticeVector r(*this);
    for (auto& c : r.coords_) {
        c = checked_sub(0, c);
    }
    return r;
}

LatticeVector& LatticeVector::operator+=(const LatticeVector& rhs)
{
    if (rhs.dim() != dim()) {
        throw std::invalid_argument("lattice vector dimension mismatch");
    }
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        coords_[i] = checked_add(coords_[i], rhs.coords_[i]);
    }
    return *this;
}

LatticeVector& LatticeVector::operator-=(const LatticeVector& rhs)
{
    if (rhs.dim() != dim()) {
        throw std::invalid_argument("lattice vector dimension mismatch");
    }
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        coords_[i] = checked_sub(coords_[i], rhs.coords_[i]);
    }
    return *this;
}

LatticeVector operator*(std::int64_t k, const LatticeVector& v)
{
    LatticeVector r(v);
    for (auto& c : r.coords_) {
        c = checked_mul(k, c);
    }
    return r;
}

std::string LatticeVector::to_string() const
{
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i != 0) {
            s += ",";
        }
        s += std::to_string(coords_[i]);
    }
    return s + ")";
}

// LatticeSet

LatticeSet::LatticeSet(std::size_t dim, std::vector<LatticeVector> elems) : dim_(dim), elems_(std::move(elems))
{
    for (const auto& e : elems_) {
        if (e.dim() != dim_) {
            throw std::invalid_argument("lattice set element of wrong dimension");
        }
    }
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

bool LatticeSet::contains(const LatticeVector& v) const
{
    return std::binary_search(elems_.begin(), elems_.end(), v);
}

void LatticeSet::insert(const LatticeVector& v)
{
    if (v.dim() != dim_) {
        throw std::invalid_argument("lattice set element of wrong dimension");
    }
    auto it = std::lower_bound(elems_.begin(), elems_.end(), v);
    if (it == elems_.end() || *it != v) {
        elems_.insert(it, v);
    }
}

void LatticeSet::merge(const LatticeSet& other)
{
    if (other.dim_ != dim_) {
        throw std::invalid_argument("lattice set dimension mismatch");
    }
    std::vector<LatticeVector> out;
    out.reserve(elems_.size() + other.elems_.size());
    std::set_union(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(), std::back_inserter(out));
    elems_ = std::move(out);
}

LatticeSet LatticeSet::negated() const
{
    std::vector<LatticeVector> out;
    out.reserve(elems_.size());
    for (const auto& e : elems_) {
        out.push_back(-e);
    }
    return LatticeSet(dim_, std::move(out));
}

bool LatticeSet::is_symmetric() const { return negated() == *this; }

std::int64_t LatticeSet::max_abs_coord() const
{
    std::int64_t best = 0;
    for (const auto& e : elems_) {
        for (auto c : e.coords()) {
            best = std::max(best, c < 0 ? -c : c);
        }
    }
    return best;
}

bool LatticeSet::subset_of(const LatticeSet& other) const
{
    return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
}

// LineFamily

LatticeVector canonical_direction(const LatticeVector& v)
{
    std::int64_t g = 0;
    for (auto c : v.coords()) {
        g = std::gcd(g, c);
    }
    if (g == 0) {
        throw std::invalid_argument("zero vector has no direction");
    }
    LatticeVector r(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) {
        r[i] = v[i] / g;
    }
    for (std::size_t i = 0; i < r.dim(); ++i) {
        if (r[i] != 0) {
            if (r[i] < 0) {
                r = -r;
            }
            break;
        }
    }
    return r;
}

LineFamily::LineFamily(std::vector<LatticeVector> dirs)
{
    if (dirs.empty()) {
        throw std::invalid_argument("line family needs at least one direction");
    }
    const std::size_t n = dirs.front().dim();
    if (n == 0 || dirs.size() != n) {
        throw std::invalid_argument("line family must have exactly n directions in dimension n");
    }
    for (auto& d : dirs) {
        if (d.dim() != n) {
            throw std::invalid_argument("line directions differ in dimension");
        }
        d = canonical_direction(d);
    }
    if (determinant(dirs) == 0) {
        throw std::invalid_argument("line directions are linearly dependent");
    }
    dirs_ = std::move(dirs);
    is_axes_ = std::all_of(dirs_.begin(), dirs_.end(), [](const LatticeVector& d) { return d.axis().has_value(); });
}

LineFamily LineFamily::axes(std::size_t dim)
{
    std::vector<LatticeVector> dirs;
    for (std::size_t l = 0; l < dim; ++l) {
        dirs.push_back(LatticeVector::unit(dim, l));
    }
    return LineFamily(std::move(dirs));
}

bool LineFamily::contains(std::span<const std::int64_t> v) const
{
    if (is_axes_) {
        int nonzero = 0;
        for (auto c : v) {
            nonzero += (c != 0);
        }
        return nonzero <= 1;
    }
    bool zero = std::all_of(v.begin(), v.end(), [](std::int64_t c) { return c == 0; });
    if (zero) {
        return true;
    }
    for (const auto& d : dirs_) {
        std::size_t lead = 0;
        while (d[lead] == 0) {
            ++lead;
        }
        if (v[lead] % d[lead] != 0) {
            continue;
        }
        const std::int64_t k = v[lead] / d[lead];
        bool ok = true;
        for (std::size_t i = 0; i < v.size() && ok; ++i) {
            ok = (static_cast<int128>(k) * d[i] == v[i]);
        }
        if (ok) {
            return true;
        }
    }
    return false;
}

// Subgroup

Subgroup Subgroup::generated_by(std::size_t dim, std::span<const LatticeVector> gens)
{
    std::vector<LatticeVector> rows;
    for (const auto& g : gens) {
        if (g.dim() != dim) {
            throw std::invalid_argument("generator of wrong dimension");
        }
        if (!g.is_zero()) {
            rows.push_back(g);
        }
    }

    auto axpy = [](LatticeVector& target, std::int64_t q, const LatticeVector& src) {
        for (std::size_t i = 0; i < target.dim(); ++i) {
            target[i] = checked_sub(target[i], checked_mul(q, src[i]));
        }
    };

    std::size_t pivot = 0;
    for (std::size_t col = 0; col < dim && pivot < rows.size(); ++col) {
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = pivot; i < rows.size(); ++i) {
                if (rows[i][col] == 0) {
                    continue;
                }
                if (best == rows.size() || std::abs(rows[i][col]) < std::abs(rows[best][col])) {
                    best = i;
                }
            }
            if (best == rows.size()) {
                break;
            }
            std::swap(rows[pivot], rows[best]);
            bool clean = true;
            for (std::size_t i = pivot + 1; i < rows.size(); ++i) {
                if (rows[i][col] != 0) {
                    axpy(rows[i], rows[i][col] / rows[pivot][col], rows[pivot]);
                    clean = clean && rows[i][col] == 0;
                }
            }
            if (clean) {
                break;
            }
        }
        if (rows[pivot][col] == 0) {
            continue;
        }
        if (rows[pivot][col] < 0) {
            rows[pivot] = -rows[pivot];
        }
        for (std::size_t k = 0; k < pivot; ++k) {
            axpy(rows[k], floor_div(rows[k][col], rows[pivot][col]), rows[pivot]);
        }
        ++pivot;
    }
    rows.resize(pivot);

    Subgroup s;
    s.dim_ = dim;
    s.basis_ = std::move(rows);
    return s;
}

bool Subgroup::is_full() const
{
    if (basis_.size() != dim_) {
        return false;
    }
    for (std::size_t i = 0; i < dim_; ++i) {
        if (basis_[i][i] != 1) {
            return false;
        }
    }
    return true;
}

std::int64_t determinant(std::span<const LatticeVector> rows)
{
    const std::size_t n = rows.size();
    if (n == 0) {
        return 1;
    }
    std::vector<std::vector<int128>> a(n, std::vector<int128>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].dim() != n) {
            throw std::invalid_argument("determinant of a non-square matrix");
        }
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = rows[i][j];
        }
    }
    // Bareiss
    int sign = 1;
    int128 prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t swap_with = k + 1;
            while (swap_with < n && a[swap_with][k] == 0) {
                ++swap_with;
            }
            if (swap_with == n) {
                return 0;
            }
            std::swap(a[k], a[swap_with]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    int128 det = sign * a[n - 1][n - 1];
    if (det < std::numeric_limits<std::int64_t>::min() || det > std::numeric_limits<std::int64_t>::max()) {
        throw std::overflow_error("determinant overflow");
    }
    return static_cast<std::int64_t>(det);
}

} // namespace nset
