#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace pfaffcount {

using Integer = mpz_class;

/// Exact rational number. Values produced by this library are always
/// canonical: gcd(|num|, den) = 1, den >= 1, zero is 0/1.
using Rational = mpq_class;

/// Canonical num/den; throws PreconditionError when den == 0.
Rational make_rational(const Integer& num, const Integer& den);

/// Parses "p/q" or "p" (optional leading '-'). Throws FormatError.
Rational parse_rational(std::string_view text);

/// "p/q", with "/q" omitted when q == 1.
std::string format_rational(const Rational& q);

/// Height max(|num|, den). This is not the projective height.
Integer height(const Rational& q);

struct RationalPoint {
    Rational x;
    Rational y;
};

bool operator==(const RationalPoint& a, const RationalPoint& b);
inline bool operator!=(const RationalPoint& a, const RationalPoint& b) { return !(a == b); }
/// Lexicographic (x, then y).
bool operator<(const RationalPoint& a, const RationalPoint& b);

Integer point_height(const RationalPoint& p);

/// "p/q,r/s".
std::string format_point(const RationalPoint& p);
RationalPoint parse_point(std::string_view text);

/// Strong type for the height cutoff H >= 1.
class HeightBound {
public:
    explicit HeightBound(Integer value);
    explicit HeightBound(std::int64_t value) : HeightBound(Integer(static_cast<long>(value))) {}

    const Integer& value() const noexcept { return value_; }
    /// Value as a machine integer; throws PreconditionError above 2^62.
    std::int64_t as_int64() const;

    friend bool operator==(const HeightBound& a, const HeightBound& b) { return a.value_ == b.value_; }

private:
    Integer value_;
};

/// Every reduced a/b with max(|a|, b) <= H, in increasing order.
std::vector<Rational> enumerate_rationals(const HeightBound& h);

/// Number of rationals of height <= H (2 * sum_{b<=H} #{1<=a<=H : gcd(a,b)=1} + 1).
std::int64_t count_rationals(const HeightBound& h);

/// Visits (a, b) with gcd(|a|, b) = 1, |a| <= H, 1 <= b <= bmax range, in
/// denominator-sweep order: b ascending, then a ascending. Used by the census
/// workers, which partition by denominator range.
void for_each_rational_by_denominator(std::int64_t h, std::int64_t b_first, std::int64_t b_last,
                                      const std::function<void(std::int64_t, std::int64_t)>& visit);

/// All reduced rationals of height <= H in the closed interval [lo, hi],
/// increasing. Stern-Brocot descent with batched (continued-fraction) moves;
/// cost is O((output + 1) log H), independent of the interval's position.
std::vector<Rational> rationals_in_interval(const Rational& lo, const Rational& hi, const HeightBound& h);

/// Simplest rational (smallest denominator, then smallest |numerator|) in [lo, hi].
Rational simplest_rational_between(const Rational& lo, const Rational& hi);

} // namespace pfaffcount
