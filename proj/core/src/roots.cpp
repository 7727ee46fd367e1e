#include "pfaffcount/roots.hpp"

#include <algorithm>
#include <cmath>

#include "pfaffcount/errors.hpp"

namespace pfaffcount {

namespace {

constexpr int kLookahead = 6;

Precision precision_for(const Rational& l, const Rational& r)
{
    long bits = 0;
    const Rational w = r - l;
    if (w > 0) {
        const double wd = w.get_d();
        bits = wd > 0 ? static_cast<long>(std::ceil(-std::log2(wd))) : 1100;
    }
    const double mag = std::max({std::abs(l.get_d()), std::abs(r.get_d()), 1.0});
    const long mag_bits = static_cast<long>(std::ceil(std::log2(mag)));
    return static_cast<Precision>(64 + std::max(0L, bits) + mag_bits);
}

Rational middle_point(const Rational& l, const Rational& r)
{
    const Rational quarter = (r - l) / 4;
    return simplest_rational_between(l + quarter, r - quarter);
}

Rational pow2_neg(long bits)
{
    Rational q(1);
    mpz_mul_2exp(q.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<mp_bitcnt_t>(bits));
    return q;
}

void check_domain(const PfaffianFunction& f, const Rational& a, const Rational& b)
{
    if (a > b) {
        throw PreconditionError("interval endpoints out of order: " + format_rational(a) + " > " + format_rational(b));
    }
    if (!f.chain().domain().contains(a, b)) {
        throw PreconditionError("interval [" + format_rational(a) + ", " + format_rational(b) +
                                "] leaves the chain's domain");
    }
}

class Isolator {
public:
    Isolator(const DerivativeTower& tower, const RootOptions& options)
        : tower_(tower), options_(options), floor_(pow2_neg(options.max_bits))
    {
    }

    void solve(int order, Rational l, Rational r, const Rational& stuck, std::vector<RootEnclosure>& out) const
    {
        const Precision prec = precision_for(l, r);
        const Interval x(l, r, prec);
        if (!tower_.enclose(order, x, prec).contains_zero()) {
            return;
        }
        if (l == r) {
            if (tower_.point_sign(order, l, options_.max_bits) == 0) {
                out.push_back({l, l});
            }
            return;
        }
        const bool has_next = order < tower_.max_order();
        if (has_next && (tower_.identically_zero(order + 1) ||
                         !tower_.enclose(order + 1, x, prec).contains_zero())) {
            monotone(order, l, r, out);
            return;
        }
        if (r - l < floor_) {
            throw PrecisionExhausted("zero of derivative order " + std::to_string(order) +
                                         " unresolved near [" + format_rational(l) + ", " + format_rational(r) + "]",
                                     order);
        }
        if (has_next && r - l < stuck) {
            hierarchical(order, l, r, out);
            return;
        }
        const auto [m, sm] = split(order, l, r);
        if (sm == 0) {
            out.push_back({m, m});
        }
        solve(order, l, m, stuck, out);
        solve(order, m, r, stuck, out);
    }

private:
    // A split point inside (l, r) whose sign is decidable, near the middle.
    std::pair<Rational, int> split(int order, const Rational& l, const Rational& r) const
    {
        const Rational m = middle_point(l, r);
        try {
            return {m, tower_.point_sign(order, m, options_.max_bits)};
        } catch (const PrecisionExhausted&) {
        }
        const Rational w = (r - l) / 16;
        for (int i : {7, 8, 6, 9, 5, 10}) {
            const Rational c = simplest_rational_between(l + w * i + w / 4, l + w * (i + 1) - w / 4);
            try {
                return {c, tower_.point_sign(order, c, options_.max_bits)};
            } catch (const PrecisionExhausted&) {
            }
        }
        throw PrecisionExhausted("no decidable split point for derivative order " + std::to_string(order) + " in [" +
                                     format_rational(l) + ", " + format_rational(r) + "]",
                                 order);
    }

    void monotone(int order, Rational l, Rational r, std::vector<RootEnclosure>& out) const
    {
        const int sl = tower_.point_sign(order, l, options_.max_bits);
        const int sr = tower_.point_sign(order, r, options_.max_bits);
        if (sl == 0) {
            out.push_back({l, l});
        }
        if (sr == 0) {
            out.push_back({r, r});
        }
        if (sl * sr >= 0) {
            return;
        }
        const Rational target = pow2_neg(options_.root_bits);
        while (r - l >= target) {
            const auto [m, sm] = split(order, l, r);
            if (sm == 0) {
                out.push_back({m, m});
                return;
            }
            (sm == sl ? l : r) = m;
        }
        out.push_back({l, r});
    }

    // Zeros of h^(order+1) split [l, r] into pieces where h^(order) is monotone.
    void hierarchical(int order, const Rational& l, const Rational& r, std::vector<RootEnclosure>& out) const
    {
        std::vector<RootEnclosure> critical;
        solve(order + 1, l, r, (r - l) / (Rational(1) << 24), critical);
        critical = normalize(std::move(critical));
        Rational cursor = l;
        for (auto& z : critical) {
            tighten(order, z, out);
            if (cursor < z.lo) {
                monotone(order, cursor, z.lo, out);
            }
            cursor = z.hi;
        }
        if (cursor < r) {
            monotone(order, cursor, r, out);
        }
    }

    // Shrinks a zero enclosure of h^(order+1) until h^(order) is one-signed on it.
    void tighten(int order, RootEnclosure& z, std::vector<RootEnclosure>& out) const
    {
        while (!z.exact()) {
            const Precision prec = precision_for(z.lo, z.hi);
            if (!tower_.enclose(order, Interval(z.lo, z.hi, prec), prec).contains_zero()) {
                return;
            }
            if (z.hi - z.lo < floor_) {
                throw PrecisionExhausted("suspected tangential zero of derivative order " + std::to_string(order) +
                                             " near [" + format_rational(z.lo) + ", " + format_rational(z.hi) + "]",
                                         order);
            }
            const int s_lo = tower_.point_sign(order + 1, z.lo, options_.max_bits);
            const auto [m, sm] = split(order + 1, z.lo, z.hi);
            if (sm == 0) {
                z = {m, m};
            } else {
                (sm == s_lo ? z.lo : z.hi) = m;
            }
        }
        if (tower_.point_sign(order, z.lo, options_.max_bits) == 0) {
            out.push_back(z);
        }
    }

public:
    static std::vector<RootEnclosure> normalize(std::vector<RootEnclosure> roots)
    {
        std::sort(roots.begin(), roots.end(), [](const RootEnclosure& a, const RootEnclosure& b) {
            return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
        });
        std::vector<RootEnclosure> merged;
        for (auto& z : roots) {
            if (!merged.empty() && z.lo <= merged.back().hi) {
                if (z.hi > merged.back().hi) {
                    merged.back().hi = z.hi;
                }
                continue;
            }
            merged.push_back(std::move(z));
        }
        return merged;
    }

private:
    const DerivativeTower& tower_;
    const RootOptions& options_;
    Rational floor_;
};

// Breakpoints strictly inside (a, b) plus the two ends, as consecutive pieces.
template <typename Piece>
std::vector<Piece> pieces_between(const Rational& a, const Rational& b, const std::vector<RootEnclosure>& breaks)
{
    std::vector<Piece> out;
    RootEnclosure left{a, a};
    for (const auto& z : breaks) {
        if (z.exact() && (z.lo == a || z.lo == b)) {
            continue;
        }
        if (z.lo <= a) {
            left = z;
            continue;
        }
        if (z.hi >= b) {
            Piece p;
            p.left = left;
            p.right = z;
            out.push_back(std::move(p));
            return out;
        }
        Piece p;
        p.left = left;
        p.right = z;
        out.push_back(std::move(p));
        left = z;
    }
    Piece p;
    p.left = left;
    p.right = RootEnclosure{b, b};
    out.push_back(std::move(p));
    return out;
}

Rational interior_sample(const RootEnclosure& left, const RootEnclosure& right)
{
    if (left.hi >= right.lo) {
        return left.hi;
    }
    return middle_point(left.hi, right.lo);
}

} // namespace

DerivativeTower::DerivativeTower(const PfaffianFunction& f, int max_order)
{
    if (max_order < 0) {
        throw PreconditionError("derivative tower order must be nonnegative");
    }
    levels_.push_back(f);
    for (int k = 1; k <= max_order; ++k) {
        levels_.push_back(derivative(levels_.back()));
    }
}

DerivativeTower::DerivativeTower(const PfaffianFunction& f, int max_order, Interval shift)
    : DerivativeTower(f, max_order)
{
    const auto& p = levels_.front().polynomial();
    if (shift.is_point()) {
        const Rational c = shift.lo_rational();
        const int variables = p.variables();
        const PfaffPolynomial diff = p - PfaffPolynomial::constant(variables, Constant(c));
        shift_cancels_ = diff.is_zero();
    }
    shift_ = std::move(shift);
}

DerivativeTower DerivativeTower::deepened(int max_order) const
{
    DerivativeTower t = *this;
    while (t.max_order() < max_order) {
        t.levels_.push_back(derivative(t.levels_.back()));
    }
    return t;
}

bool DerivativeTower::identically_zero(int order) const
{
    if (order == 0 && shift_) {
        return shift_cancels_;
    }
    return level(order).polynomial().is_zero();
}

Interval DerivativeTower::enclose(int order, const Interval& x, Precision prec) const
{
    Interval v = level(order).enclose(x, prec);
    if (order == 0 && shift_) {
        v -= *shift_;
    }
    return v;
}

std::optional<Rational> DerivativeTower::exact_value(int order, const Rational& q) const
{
    const auto& p = level(order).polynomial();
    if (!p.independent_of_from(1) || !p.has_rational_coefficients()) {
        return std::nullopt;
    }
    Rational v = 0;
    for (const auto& [e, c] : p.terms()) {
        Rational t = c.rational_value();
        for (int i = 0; i < e[0]; ++i) {
            t *= q;
        }
        v += t;
    }
    if (order == 0 && shift_) {
        if (!shift_->is_point()) {
            return std::nullopt;
        }
        v -= shift_->lo_rational();
    }
    return v;
}

int DerivativeTower::point_sign(int order, const Rational& q, long max_bits) const
{
    if (identically_zero(order)) {
        return 0;
    }
    if (const auto exact = exact_value(order, q)) {
        return sgn(*exact);
    }
    const Precision ceiling = static_cast<Precision>(max_bits) * 4 + 256;
    Precision prec = precision_for(q, q);
    for (;;) {
        const Interval v = enclose(order, Interval(q, prec), prec);
        if (v.is_exact_zero()) {
            return 0;
        }
        if (v.is_positive()) {
            return 1;
        }
        if (v.is_negative()) {
            return -1;
        }
        if (prec >= ceiling) {
            break;
        }
        prec = std::min(ceiling, 2 * prec);
    }
    throw PrecisionExhausted("sign of derivative order " + std::to_string(order) + " undecided at x = " +
                                 format_rational(q),
                             order);
}

std::vector<RootEnclosure> isolate_zeros(const DerivativeTower& tower, int order, const Rational& a,
                                         const Rational& b, const RootOptions& options)
{
    check_domain(tower.level(0), a, b);
    if (order < 0 || order > tower.max_order()) {
        throw PreconditionError("derivative order outside the tower");
    }
    if (tower.identically_zero(order)) {
        throw PreconditionError("derivative order " + std::to_string(order) + " vanishes identically");
    }
    const DerivativeTower deep = tower.deepened(order + kLookahead);
    Isolator iso(deep, options);
    std::vector<RootEnclosure> out;
    iso.solve(order, a, b, (b - a) / (Rational(1) << 32), out);
    return Isolator::normalize(std::move(out));
}

std::string to_string(Sign s)
{
    switch (s) {
    case Sign::negative:
        return "-";
    case Sign::positive:
        return "+";
    case Sign::zero:
        return "0";
    }
    return "?";
}

std::string to_string(SlopeLabel s)
{
    switch (s) {
    case SlopeLabel::le_minus_one:
        return "f'<=-1";
    case SlopeLabel::middle:
        return "-1<=f'<=1";
    case SlopeLabel::ge_one:
        return "f'>=1";
    }
    return "?";
}

std::vector<SignPiece> sign_partition(const PfaffianFunction& f, const Rational& a, const Rational& b, int m,
                                      const RootOptions& options)
{
    if (m < 1) {
        throw PreconditionError("sign_partition: maximal order must be at least 1");
    }
    check_domain(f, a, b);
    const DerivativeTower tower(f, m + 2);
    std::vector<RootEnclosure> breaks;
    for (int j = 1; j <= m; ++j) {
        if (tower.identically_zero(j)) {
            continue;
        }
        auto zs = isolate_zeros(tower, j, a, b, options);
        breaks.insert(breaks.end(), zs.begin(), zs.end());
    }
    breaks = Isolator::normalize(std::move(breaks));
    auto pieces = pieces_between<SignPiece>(a, b, breaks);
    for (auto& piece : pieces) {
        const Rational q = interior_sample(piece.left, piece.right);
        for (int j = 1; j <= m; ++j) {
            if (tower.identically_zero(j)) {
                piece.profile.push_back(Sign::zero);
                continue;
            }
            const int s = tower.point_sign(j, q, options.max_bits);
            piece.profile.push_back(s > 0 ? Sign::positive : (s < 0 ? Sign::negative : Sign::zero));
        }
    }
    return pieces;
}

std::vector<SlopePiece> slope_trichotomy(const PfaffianFunction& f, const Rational& a, const Rational& b,
                                         const RootOptions& options)
{
    check_domain(f, a, b);
    const PfaffianFunction df = derivative(f);
    const DerivativeTower above(df, 4, Interval(Rational(1), kDefaultPrecision));
    const DerivativeTower below(df, 4, Interval(Rational(-1), kDefaultPrecision));
    std::vector<RootEnclosure> breaks;
    for (const DerivativeTower* t : {&above, &below}) {
        if (!t->identically_zero(0)) {
            auto zs = isolate_zeros(*t, 0, a, b, options);
            breaks.insert(breaks.end(), zs.begin(), zs.end());
        }
    }
    breaks = Isolator::normalize(std::move(breaks));
    auto pieces = pieces_between<SlopePiece>(a, b, breaks);
    std::vector<SlopePiece> merged;
    for (auto& piece : pieces) {
        const Rational q = interior_sample(piece.left, piece.right);
        if (above.point_sign(0, q, options.max_bits) > 0) {
            piece.label = SlopeLabel::ge_one;
        } else if (below.point_sign(0, q, options.max_bits) < 0) {
            piece.label = SlopeLabel::le_minus_one;
        } else {
            piece.label = SlopeLabel::middle;
        }
        if (!merged.empty() && merged.back().label == piece.label) {
            merged.back().right = piece.right;
        } else {
            merged.push_back(std::move(piece));
        }
    }
    return merged;
}

} // namespace pfaffcount
