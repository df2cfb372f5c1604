#include "nset/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace nset {

namespace {

constexpr int128 k_min = std::numeric_limits<std::int64_t>::min();
constexpr int128 k_max = std::numeric_limits<std::int64_t>::max();

int128 abs128(int128 x) { return x < 0 ? -x : x; }

int128 gcd128(int128 a, int128 b)
{
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t narrow(int128 x)
{
    if (x < k_min || x > k_max) {
        throw std::overflow_error("rational arithmetic overflow");
    }
    return static_cast<std::int64_t>(x);
}

std::int64_t parse_int(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::invalid_argument("malformed rational component '" + std::string(s) + "'");
    }
    return value;
}

} // namespace

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) {
        throw std::overflow_error("integer overflow in addition");
    }
    return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b)
{
    std::int64_t r = 0;
    if (__builtin_sub_overflow(a, b, &r)) {
        throw std::overflow_error("integer overflow in subtraction");
    }
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw std::overflow_error("integer overflow in multiplication");
    }
    return r;
}

Rational::Rational(std::int64_t num, std::int64_t den)
{
    if (den == 0) {
        throw std::invalid_argument("rational with zero denominator");
    }
    *this = from_wide(num, den);
}

Rational Rational::from_wide(int128 num, int128 den)
{
    if (den < 0) {
        num = -num;
        den = -den;
    }
    int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    Rational r;
    r.num_ = narrow(num);
    r.den_ = narrow(den);
    return r;
}

std::int64_t Rational::floor() const { return floor_div(num_, den_); }

std::int64_t Rational::ceil() const { return -floor_div(-num_, den_); }

Rational Rational::operator-() const { return from_wide(-static_cast<int128>(num_), den_); }

Rational& Rational::operator+=(const Rational& rhs)
{
    int128 n = static_cast<int128>(num_) * rhs.den_ + static_cast<int128>(rhs.num_) * den_;
    int128 d = static_cast<int128>(den_) * rhs.den_;
    return *this = from_wide(n, d);
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs)
{
    int128 n = static_cast<int128>(num_) * rhs.num_;
    int128 d = static_cast<int128>(den_) * rhs.den_;
    return *this = from_wide(n, d);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
    int128 lhs = static_cast<int128>(a.num_) * b.den_;
    int128 rhs = static_cast<int128>(b.num_) * a.den_;
    return lhs <=> rhs;
}

std::string Rational::to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

Rational Rational::parse(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_int(text));
    }
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

} // namespace nset
