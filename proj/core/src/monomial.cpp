#include "pfaffcount/monomial.hpp"

#include <algorithm>

#include "pfaffcount/errors.hpp"
#include "pfaffcount/interval.hpp"

namespace pfaffcount {

bool graded_lex_less(const Exponent& a, const Exponent& b)
{
    if (a.degree() != b.degree()) {
        return a.degree() < b.degree();
    }
    return a.h > b.h;
}

MonomialSet::MonomialSet(std::vector<Exponent> exponents) : exponents_(std::move(exponents))
{
    if (exponents_.empty()) {
        throw PreconditionError("monomial set must be nonempty");
    }
    for (const auto& e : exponents_) {
        if (e.h < 0 || e.k < 0) {
            throw PreconditionError("monomial exponents must be nonnegative");
        }
    }
    std::sort(exponents_.begin(), exponents_.end(), graded_lex_less);
    if (std::adjacent_find(exponents_.begin(), exponents_.end()) != exponents_.end()) {
        throw PreconditionError("duplicate exponent pair in monomial set");
    }
}

bool MonomialSet::contains(const Exponent& e) const
{
    return index_of(e) != npos;
}

std::size_t MonomialSet::index_of(const Exponent& e) const
{
    auto it = std::lower_bound(exponents_.begin(), exponents_.end(), e, graded_lex_less);
    if (it != exponents_.end() && *it == e) {
        return static_cast<std::size_t>(it - exponents_.begin());
    }
    return npos;
}

MonomialSet box_set(int beta, int gamma)
{
    if (beta < 2 || gamma < 2) {
        throw PreconditionError("box_set requires beta >= 2 and gamma >= 2");
    }
    std::vector<Exponent> j;
    j.reserve(static_cast<std::size_t>(beta) * static_cast<std::size_t>(gamma));
    for (int h = 0; h < beta; ++h) {
        for (int k = 0; k < gamma; ++k) {
            j.push_back({h, k});
        }
    }
    return MonomialSet(std::move(j));
}

MonomialSet total_degree_set(int d)
{
    if (d < 1) {
        throw PreconditionError("total_degree_set requires d >= 1");
    }
    std::vector<Exponent> j;
    for (int n = 0; n <= d; ++n) {
        for (int h = n; h >= 0; --h) {
            j.push_back({h, n - h});
        }
    }
    return MonomialSet(std::move(j));
}

std::int64_t total_degree_count(std::int64_t d)
{
    return (d + 1) * (d + 2) / 2;
}

namespace {

// C - 1 = exp(2 log(D! D^R) / (D(D-1))), bracketed at the given precision.
Interval c_minus_one(std::int64_t d, std::int64_t r, Precision prec)
{
    Interval logx = lgamma_int(static_cast<unsigned long>(d), prec);
    logx += Interval::from_integer(Integer(static_cast<long>(r)), prec) * log(Interval(static_cast<long>(d), prec));
    const Rational exponent = make_rational(2, Integer(static_cast<long>(d)) * Integer(static_cast<long>(d - 1)));
    return exp(logx * Interval(exponent, prec));
}

} // namespace

MonomialParameters parameters(const MonomialSet& m)
{
    std::int64_t r = 0;
    std::int64_t s = 0;
    std::int64_t t = 0;
    for (const auto& e : m.exponents()) {
        r += e.h + e.k;
        s = std::max<std::int64_t>(s, e.h);
        t = std::max<std::int64_t>(t, e.k);
    }
    return parameters_from_sums(static_cast<std::int64_t>(m.size()), r, s, t);
}

MonomialParameters parameters_from_sums(std::int64_t D, std::int64_t R, std::int64_t s, std::int64_t t)
{
    if (D < 1 || R < 0 || s < 0 || t < 0) {
        throw PreconditionError("monomial parameters: invalid sums");
    }
    MonomialParameters p;
    p.D = D;
    p.R = R;
    p.s = s;
    p.t = t;
    p.S = p.D * (p.s + p.t);
    if (p.D < 2) {
        return p;
    }
    const Integer pairs = Integer(static_cast<long>(p.D)) * Integer(static_cast<long>(p.D - 1));
    p.rho = make_rational(2 * Integer(static_cast<long>(p.R)), pairs);
    p.sigma = make_rational(2 * Integer(static_cast<long>(p.S)), pairs);
    const Interval c = c_minus_one(p.D, p.R, 192) + Interval(1L, 192);
    p.C_upper = c.hi_rational();
    p.C_lower = c.lo_rational();
    return p;
}

PlaneCurve::PlaneCurve(MonomialSet support, std::vector<Rational> coefficients)
    : support_(std::move(support)), coefficients_(std::move(coefficients))
{
    if (coefficients_.size() != support_.size()) {
        throw PreconditionError("plane curve: coefficient count does not match support size");
    }
    if (std::all_of(coefficients_.begin(), coefficients_.end(), [](const Rational& c) { return c == 0; })) {
        throw PreconditionError("plane curve: all coefficients are zero");
    }
}

PlaneCurve PlaneCurve::from_terms(const std::vector<std::pair<Exponent, Rational>>& terms)
{
    std::vector<Exponent> j;
    for (const auto& [e, c] : terms) {
        if (c != 0) {
            j.push_back(e);
        }
    }
    MonomialSet support(std::move(j));
    std::vector<Rational> coeffs(support.size());
    for (const auto& [e, c] : terms) {
        if (c != 0) {
            coeffs[support.index_of(e)] = c;
        }
    }
    return PlaneCurve(std::move(support), std::move(coeffs));
}

Rational PlaneCurve::coefficient(const Exponent& e) const
{
    const auto i = support_.index_of(e);
    return i == MonomialSet::npos ? Rational(0) : coefficients_[i];
}

std::pair<int, int> PlaneCurve::bidegree() const
{
    int b = 0;
    int c = 0;
    for (std::size_t i = 0; i < coefficients_.size(); ++i) {
        if (coefficients_[i] != 0) {
            b = std::max(b, support_.exponents()[i].h);
            c = std::max(c, support_.exponents()[i].k);
        }
    }
    return {b, c};
}

int PlaneCurve::total_degree() const
{
    int d = 0;
    for (std::size_t i = 0; i < coefficients_.size(); ++i) {
        if (coefficients_[i] != 0) {
            d = std::max(d, support_.exponents()[i].degree());
        }
    }
    return d;
}

PlaneCurve PlaneCurve::trimmed() const
{
    std::vector<std::pair<Exponent, Rational>> terms;
    for (std::size_t i = 0; i < coefficients_.size(); ++i) {
        terms.emplace_back(support_.exponents()[i], coefficients_[i]);
    }
    return from_terms(terms);
}

namespace {

// Powers base^0..base^n.
std::vector<Rational> powers(const Rational& base, int n)
{
    std::vector<Rational> out(static_cast<std::size_t>(n) + 1);
    out[0] = 1;
    for (int i = 1; i <= n; ++i) {
        out[static_cast<std::size_t>(i)] = out[static_cast<std::size_t>(i) - 1] * base;
    }
    return out;
}

} // namespace

std::vector<Rational> monomial_row(const MonomialSet& m, const RationalPoint& p)
{
    int maxh = 0;
    int maxk = 0;
    for (const auto& e : m.exponents()) {
        maxh = std::max(maxh, e.h);
        maxk = std::max(maxk, e.k);
    }
    const auto xs = powers(p.x, maxh);
    const auto ys = powers(p.y, maxk);
    std::vector<Rational> row;
    row.reserve(m.size());
    for (const auto& e : m.exponents()) {
        row.push_back(xs[static_cast<std::size_t>(e.h)] * ys[static_cast<std::size_t>(e.k)]);
    }
    return row;
}

Rational evaluate_curve(const PlaneCurve& g, const RationalPoint& p)
{
    const auto row = monomial_row(g.support(), p);
    Rational sum = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
        sum += g.coefficients()[i] * row[i];
    }
    return sum;
}

} // namespace pfaffcount
