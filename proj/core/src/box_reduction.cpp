#include <algorithm>

#include "pfaffcount/bounds.hpp"
#include "pfaffcount/errors.hpp"

namespace pfaffcount {

namespace {

using Terms = std::vector<std::pair<Exponent, Rational>>;

Terms terms_of(const PlaneCurve& F)
{
    Terms t;
    const auto& e = F.support().exponents();
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (F.coefficients()[i] != 0) {
            t.emplace_back(e[i], F.coefficients()[i]);
        }
    }
    return t;
}

Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

} // namespace

std::string to_string(BoxCase c)
{
    switch (c) {
    case BoxCase::i:
        return "i";
    case BoxCase::ii:
        return "ii";
    case BoxCase::iii:
        return "iii";
    case BoxCase::iv:
        return "iv";
    }
    return "?";
}

PlaneCurve reciprocal_y(const PlaneCurve& F)
{
    const int c = F.bidegree().second;
    Terms t = terms_of(F);
    if (std::none_of(t.begin(), t.end(), [](const auto& term) { return term.first.k == 0; })) {
        throw PreconditionError("box reduction: F has no term independent of y, so y^c F(x, 1/y) drops bidegree");
    }
    for (auto& term : t) {
        term.first.k = c - term.first.k;
    }
    return PlaneCurve::from_terms(t);
}

PlaneCurve reciprocal_x(const PlaneCurve& F)
{
    const int b = F.bidegree().first;
    Terms t = terms_of(F);
    if (std::none_of(t.begin(), t.end(), [](const auto& term) { return term.first.h == 0; })) {
        throw PreconditionError("box reduction: F has no term independent of x, so x^b F(1/x, y) drops bidegree");
    }
    for (auto& term : t) {
        term.first.h = b - term.first.h;
    }
    return PlaneCurve::from_terms(t);
}

PlaneCurve reciprocal_xy(const PlaneCurve& F) { return reciprocal_x(reciprocal_y(F)); }

RationalPoint box_map(BoxCase c, const RationalPoint& p)
{
    const bool flip_x = c == BoxCase::iii || c == BoxCase::iv;
    const bool flip_y = c == BoxCase::ii || c == BoxCase::iv;
    if ((flip_x && p.x == 0) || (flip_y && p.y == 0)) {
        throw PreconditionError("box map: reciprocal of zero coordinate");
    }
    return RationalPoint{flip_x ? Rational(1 / p.x) : p.x, flip_y ? Rational(1 / p.y) : p.y};
}

BoxReduction box_reduce(const PlaneCurve& F, const RationalPoint& P)
{
    if (evaluate_curve(F, P) != 0) {
        throw PreconditionError("box_reduce: point " + format_point(P) + " is not on the curve");
    }
    const bool x_small = abs_q(P.x) <= 1;
    const bool y_small = abs_q(P.y) <= 1;
    BoxCase c = BoxCase::i;
    if (x_small && !y_small) {
        c = BoxCase::ii;
    } else if (!x_small && y_small) {
        c = BoxCase::iii;
    } else if (!x_small && !y_small) {
        c = BoxCase::iv;
    }
    switch (c) {
    case BoxCase::i:
        return BoxReduction{c, F, P};
    case BoxCase::ii:
        return BoxReduction{c, reciprocal_y(F), box_map(c, P)};
    case BoxCase::iii:
        return BoxReduction{c, reciprocal_x(F), box_map(c, P)};
    case BoxCase::iv:
        return BoxReduction{c, reciprocal_xy(F), box_map(c, P)};
    }
    throw std::logic_error("box_reduce: unreachable");
}

} // namespace pfaffcount
