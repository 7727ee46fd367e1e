#pragma once

#include <string>

#include <mpfr.h>

#include "pfaffcount/rational.hpp"

namespace pfaffcount {

using Precision = mpfr_prec_t;

inline constexpr Precision kDefaultPrecision = 128;

/// Closed real interval [lo, hi] with MPFR endpoints. Every operation rounds
/// the lower endpoint down and the upper endpoint up, so the result always
/// encloses the exact real result of the operation on any members of the
/// operands. A degenerate interval (lo == hi) denotes an exactly known value.
class Interval {
public:
    explicit Interval(Precision prec = kDefaultPrecision);
    Interval(const Rational& q, Precision prec);
    Interval(const Rational& lo, const Rational& hi, Precision prec);
    Interval(long value, Precision prec);

    Interval(const Interval& other);
    Interval(Interval&& other) noexcept;
    Interval& operator=(const Interval& other);
    Interval& operator=(Interval&& other) noexcept;
    ~Interval();

    Precision precision() const noexcept { return prec_; }

    static Interval from_integer(const Integer& z, Precision prec);
    static Interval log2(Precision prec);
    static Interval euler(Precision prec);
    static Interval pi(Precision prec);
    /// Convex hull of the two intervals.
    static Interval hull(const Interval& a, const Interval& b);

    mpfr_srcptr lo() const noexcept { return lo_; }
    mpfr_srcptr hi() const noexcept { return hi_; }

    /// Endpoints as exact (dyadic) rationals.
    Rational lo_rational() const;
    Rational hi_rational() const;
    double lo_double() const;
    double hi_double() const;
    double mid_double() const;

    bool is_point() const;
    bool contains_zero() const;
    bool contains(const Rational& q) const;
    bool is_positive() const;  ///< lo > 0
    bool is_negative() const;  ///< hi < 0
    /// Exact zero: the degenerate interval [0, 0].
    bool is_exact_zero() const;

    /// Certified: every member of *this is <= every member of other.
    bool certainly_le(const Interval& other) const;
    bool certainly_lt(const Interval& other) const;

    /// Upper bound on hi - lo.
    Interval width() const;
    /// True when hi - lo < 2^-bits (certified).
    bool narrower_than_pow2(long bits) const;

    Interval operator-() const;
    Interval& operator+=(const Interval& o);
    Interval& operator-=(const Interval& o);
    Interval& operator*=(const Interval& o);
    Interval& operator/=(const Interval& o);

    friend Interval operator+(Interval a, const Interval& b) { return a += b; }
    friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
    friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
    friend Interval operator/(Interval a, const Interval& b) { return a /= b; }

    /// Upper endpoint formatted in scientific notation, rounded upward.
    std::string upper_decimal(int digits = 6) const;
    std::string lower_decimal(int digits = 6) const;

private:
    void init(Precision prec);

    Precision prec_;
    mpfr_t lo_;
    mpfr_t hi_;

    friend Interval pow(const Interval& x, unsigned long n);
    friend Interval exp(const Interval& x);
    friend Interval log(const Interval& x);
    friend Interval sqrt(const Interval& x);
    friend Interval exp2(const Interval& x);
    friend Interval abs(const Interval& x);
    friend Interval lgamma_int(unsigned long n, Precision prec);
};

Interval pow(const Interval& x, unsigned long n);
/// x^e for x > 0 and rational e, via exp(e log x).
Interval pow(const Interval& x, const Rational& e);
Interval exp(const Interval& x);
Interval log(const Interval& x);
Interval sqrt(const Interval& x);
Interval exp2(const Interval& x);
Interval abs(const Interval& x);
/// Enclosure of log(n!).
Interval lgamma_int(unsigned long n, Precision prec);

} // namespace pfaffcount
