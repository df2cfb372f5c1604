#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace nset {

__extension__ using int128 = __int128;

/// Exact rational number over 64-bit integers.
///
/// Always stored reduced with a positive denominator. Every arithmetic
/// operation is evaluated in 128-bit intermediates and throws
/// std::overflow_error if the reduced result does not fit back into 64 bits,
/// so a membership decision is never made on a wrapped value.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t value) : num_(value) {} // NOLINT(implicit)
    Rational(std::int64_t num, std::int64_t den);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }

    std::int64_t floor() const;
    std::int64_t ceil() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    /// "p/q" form; the denominator is always written, including "/1".
    std::string to_string() const;

    /// Accepts "p/q", "p" and optional surrounding whitespace. Throws
    /// std::invalid_argument on malformed text or a zero denominator.
    static Rational parse(std::string_view text);

private:
    static Rational from_wide(int128 num, int128 den);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

/// Floor division for a positive divisor.
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    std::int64_t q = a / b;
    if ((a % b) != 0 && (a < 0)) {
        --q;
    }
    return q;
}

constexpr std::int64_t floor_mod(std::int64_t a, std::int64_t b)
{
    return a - floor_div(a, b) * b;
}

} // namespace nset
