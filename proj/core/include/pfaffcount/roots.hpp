#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pfaffcount/interval.hpp"
#include "pfaffcount/pfaffian.hpp"
#include "pfaffcount/rational.hpp"

namespace pfaffcount {

/// Closed rational enclosure [lo, hi] of one real zero; lo == hi is exact.
struct RootEnclosure {
    Rational lo;
    Rational hi;

    bool exact() const { return lo == hi; }
    friend bool operator==(const RootEnclosure& a, const RootEnclosure& b) { return a.lo == b.lo && a.hi == b.hi; }
};

struct RootOptions {
    /// Isolation gives up (PrecisionExhausted) below width 2^-max_bits.
    long max_bits = 256;
    /// Simple zeros are refined to width < 2^-root_bits.
    long root_bits = 40;
};

/// h, h', h'', ... for h = f - shift, as Pfaffian functions sharing f's chain.
class DerivativeTower {
public:
    DerivativeTower(const PfaffianFunction& f, int max_order);
    DerivativeTower(const PfaffianFunction& f, int max_order, Interval shift);

    int max_order() const noexcept { return static_cast<int>(levels_.size()) - 1; }
    /// Copy carrying at least max_order derivative levels.
    DerivativeTower deepened(int max_order) const;
    const PfaffianFunction& level(int order) const { return levels_.at(static_cast<std::size_t>(order)); }
    /// Symbolic test: the expanded polynomial (minus a rational shift) is zero.
    bool identically_zero(int order) const;

    Interval enclose(int order, const Interval& x, Precision prec) const;
    /// Sign of h^(order)(q): -1, 0 or +1, escalating precision; 0 only when the
    /// enclosure collapses to exactly zero.
    int point_sign(int order, const Rational& q, long max_bits) const;

private:
    /// Exact value when the level is a rational polynomial in x alone.
    std::optional<Rational> exact_value(int order, const Rational& q) const;

    std::vector<PfaffianFunction> levels_;
    std::optional<Interval> shift_;
    bool shift_cancels_ = false;
};

/// All real zeros of h^(order) on the closed interval [a, b], increasing.
/// Throws PreconditionError when the level is identically zero or [a, b] leaves
/// the chain's domain; PrecisionExhausted when a zero cannot be resolved.
std::vector<RootEnclosure> isolate_zeros(const DerivativeTower& tower, int order, const Rational& a,
                                         const Rational& b, const RootOptions& options = {});

enum class Sign { negative, positive, zero };
std::string to_string(Sign s);

/// Piece between two consecutive breakpoints; the boundaries are zero
/// enclosures (or the exact ends of the input interval).
struct SignPiece {
    RootEnclosure left;
    RootEnclosure right;
    /// profile[j - 1] is the sign of f^(j) on the open piece.
    std::vector<Sign> profile;
};

/// Partitions [a, b] at the zeros of f', ..., f^(m). Overlapping zero
/// enclosures of different orders merge into one breakpoint.
std::vector<SignPiece> sign_partition(const PfaffianFunction& f, const Rational& a, const Rational& b, int m,
                                      const RootOptions& options = {});

enum class SlopeLabel { le_minus_one, middle, ge_one };
std::string to_string(SlopeLabel s);

struct SlopePiece {
    RootEnclosure left;
    RootEnclosure right;
    SlopeLabel label;
};

/// Partitions [a, b] at zeros of f' - 1 and f' + 1; adjacent pieces with the
/// same label are merged.
std::vector<SlopePiece> slope_trichotomy(const PfaffianFunction& f, const Rational& a, const Rational& b,
                                         const RootOptions& options = {});

} // namespace pfaffcount
