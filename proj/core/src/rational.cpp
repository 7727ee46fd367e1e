#include "pfaffcount/rational.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "pfaffcount/errors.hpp"

namespace pfaffcount {

Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0) {
        throw PreconditionError("rational with zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

namespace {

bool all_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    const std::string_view num_text = body.substr(0, slash);
    const std::string_view den_text = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num_text) || !all_digits(den_text)) {
        throw FormatError("malformed rational '" + std::string(text) + "'");
    }
    Integer num(std::string(num_text), 10);
    Integer den(std::string(den_text), 10);
    if (den == 0) {
        throw FormatError("zero denominator in '" + std::string(text) + "'");
    }
    if (negative) {
        num = -num;
    }
    return make_rational(num, den);
}

std::string format_rational(const Rational& q)
{
    if (q.get_den() == 1) {
        return q.get_num().get_str();
    }
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer height(const Rational& q)
{
    Integer a = abs(q.get_num());
    return a > q.get_den() ? a : Integer(q.get_den());
}

bool operator==(const RationalPoint& a, const RationalPoint& b)
{
    return a.x == b.x && a.y == b.y;
}

bool operator<(const RationalPoint& a, const RationalPoint& b)
{
    if (a.x != b.x) {
        return a.x < b.x;
    }
    return a.y < b.y;
}

Integer point_height(const RationalPoint& p)
{
    Integer hx = height(p.x);
    Integer hy = height(p.y);
    return hx > hy ? hx : hy;
}

std::string format_point(const RationalPoint& p)
{
    return format_rational(p.x) + "," + format_rational(p.y);
}

RationalPoint parse_point(std::string_view text)
{
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) {
        throw FormatError("malformed point '" + std::string(text) + "'");
    }
    return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
}

HeightBound::HeightBound(Integer value) : value_(std::move(value))
{
    if (value_ < 1) {
        throw PreconditionError("height bound H must be >= 1");
    }
}

std::int64_t HeightBound::as_int64() const
{
    if (value_ > Integer(static_cast<long>(1) << 62)) {
        throw PreconditionError("height bound too large for enumeration");
    }
    return value_.get_si();
}

void for_each_rational_by_denominator(std::int64_t h, std::int64_t b_first, std::int64_t b_last,
                                      const std::function<void(std::int64_t, std::int64_t)>& visit)
{
    b_first = std::max<std::int64_t>(b_first, 1);
    b_last = std::min(b_last, h);
    for (std::int64_t b = b_first; b <= b_last; ++b) {
        for (std::int64_t a = -h; a <= h; ++a) {
            if (std::gcd(a < 0 ? -a : a, b) == 1) {
                visit(a, b);
            }
        }
    }
}

std::vector<Rational> enumerate_rationals(const HeightBound& bound)
{
    const std::int64_t h = bound.as_int64();
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(count_rationals(bound)));
    for_each_rational_by_denominator(h, 1, h, [&](std::int64_t a, std::int64_t b) {
        out.push_back(make_rational(Integer(static_cast<long>(a)), Integer(static_cast<long>(b))));
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t count_rationals(const HeightBound& bound)
{
    const std::int64_t h = bound.as_int64();
    std::int64_t positive = 0;
    for (std::int64_t b = 1; b <= h; ++b) {
        for (std::int64_t a = 1; a <= h; ++a) {
            if (std::gcd(a, b) == 1) {
                ++positive;
            }
        }
    }
    return 2 * positive + 1;
}

namespace {

// Farey pair (a/b, c/d) with bc - ad = 1; d == 0 encodes +infinity.
struct SternBrocotNode {
    Integer a, b, c, d;
};

Integer ceil_div(const Integer& n, const Integer& m)
{
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
    return q;
}

// Moves the pair down the tree until its mediant lies in [lo, hi] (returns
// true) or no descendant of the pair can (returns false). Runs of moves in
// one direction are taken in a single step.
bool settle(SternBrocotNode& n, const Rational& lo, const Rational& hi, const Integer& h)
{
    const Integer& lp = lo.get_num();
    const Integer& lq = lo.get_den();
    const Integer& hp = hi.get_num();
    const Integer& hq = hi.get_den();
    for (;;) {
        Integer mn = n.a + n.c;
        Integer md = n.b + n.d;
        if (mn > h || md > h) {
            return false;
        }
        if (mn * lq < lp * md) {
            // mediant < lo: move right while staying below lo
            Integer slope = lq * n.c - lp * n.d;
            if (slope <= 0) {
                return false;
            }
            Integer k = ceil_div(lp * n.b - lq * n.a, slope);
            n.a += (k - 1) * n.c;
            n.b += (k - 1) * n.d;
        } else if (mn * hq > hp * md) {
            // mediant > hi: move left
            Integer slope = hp * n.b - hq * n.a;
            if (slope <= 0) {
                return false;
            }
            Integer k = ceil_div(hq * n.c - hp * n.d, slope);
            n.c += (k - 1) * n.a;
            n.d += (k - 1) * n.b;
        } else {
            return true;
        }
    }
}

// Positive rationals of height <= h in [lo, hi] (lo > 0 not required; the
// tree only contains positive values), ascending.
void positive_in_interval(const Rational& lo, const Rational& hi, const Integer& h, std::vector<Rational>& out)
{
    struct Frame {
        SternBrocotNode node;
        int stage;
    };
    std::vector<Frame> stack;
    SternBrocotNode root{0, 1, 1, 0};
    if (settle(root, lo, hi, h)) {
        stack.push_back({root, 0});
    }
    while (!stack.empty()) {
        Frame& top = stack.back();
        const Integer mn = top.node.a + top.node.c;
        const Integer md = top.node.b + top.node.d;
        if (top.stage == 0) {
            top.stage = 1;
            SternBrocotNode left{top.node.a, top.node.b, mn, md};
            if (settle(left, lo, hi, h)) {
                stack.push_back({left, 0});
            }
            continue;
        }
        SternBrocotNode right{mn, md, top.node.c, top.node.d};
        stack.pop_back();
        out.push_back(make_rational(mn, md));
        if (settle(right, lo, hi, h)) {
            stack.push_back({right, 0});
        }
    }
}

Rational simplest_positive(const Rational& lo, const Rational& hi)
{
    SternBrocotNode n{0, 1, 1, 0};
    // The simplest member never has larger height than lo itself.
    const Integer cap = std::max(height(lo), height(hi));
    settle(n, lo, hi, cap);
    return make_rational(n.a + n.c, n.b + n.d);
}

} // namespace

std::vector<Rational> rationals_in_interval(const Rational& lo, const Rational& hi, const HeightBound& bound)
{
    std::vector<Rational> out;
    if (lo > hi) {
        return out;
    }
    const Integer& h = bound.value();
    if (hi < 0 || lo < 0) {
        std::vector<Rational> negative;
        const Rational nlo = -hi;
        const Rational nhi = -lo;
        positive_in_interval(nlo, nhi, h, negative);
        for (auto it = negative.rbegin(); it != negative.rend(); ++it) {
            if (*it > 0) {
                out.push_back(-*it);
            }
        }
    }
    if (lo <= 0 && hi >= 0) {
        out.emplace_back(0);
    }
    if (hi > 0) {
        positive_in_interval(lo, hi, h, out);
    }
    return out;
}

Rational simplest_rational_between(const Rational& lo, const Rational& hi)
{
    if (lo > hi) {
        throw PreconditionError("simplest_rational_between: empty interval");
    }
    if (lo <= 0 && hi >= 0) {
        return Rational(0);
    }
    if (hi < 0) {
        return -simplest_positive(-hi, -lo);
    }
    return simplest_positive(lo, hi);
}

} // namespace pfaffcount
