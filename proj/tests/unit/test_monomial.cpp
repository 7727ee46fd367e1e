#include <gtest/gtest.h>

#include <cmath>

#include <pfaffcount/errors.hpp>
#include <pfaffcount/monomial.hpp>

using namespace pfaffcount;

namespace {

Rational q(const char* text) { return parse_rational(text); }

// C from its closed form in long double, independent of the certified bracket.
long double naive_C(std::int64_t D, std::int64_t R)
{
    const long double log_value = std::lgamma(static_cast<long double>(D) + 1) +
                                  static_cast<long double>(R) * std::log(static_cast<long double>(D));
    return std::exp(2 * log_value / static_cast<long double>(D * (D - 1))) + 1;
}

PlaneCurve curve(std::vector<std::pair<Exponent, Rational>> terms) { return PlaneCurve::from_terms(terms); }

} // namespace

TEST(MonomialSet, BoxSets)
{
    const MonomialSet m = box_set(2, 2);
    ASSERT_EQ(m.size(), 4u);
    EXPECT_EQ(m.exponents()[0], (Exponent{0, 0}));
    EXPECT_EQ(m.exponents()[1], (Exponent{1, 0}));
    EXPECT_EQ(m.exponents()[2], (Exponent{0, 1}));
    EXPECT_EQ(m.exponents()[3], (Exponent{1, 1}));

    const MonomialSet a = box_set(2, 3);
    EXPECT_EQ(a.size(), 6u);
    int max_k = 0;
    for (const auto& e : a.exponents()) {
        max_k = std::max(max_k, e.k);
    }
    EXPECT_EQ(max_k, 2);

    std::vector<Exponent> transposed;
    const MonomialSet b = box_set(3, 2);
    for (const auto& e : b.exponents()) {
        transposed.push_back({e.k, e.h});
    }
    EXPECT_EQ(MonomialSet(transposed), a);
    EXPECT_THROW(box_set(0, 2), PreconditionError);
}

TEST(MonomialSet, TotalDegreeSets)
{
    EXPECT_EQ(total_degree_set(1).size(), 3u);
    EXPECT_EQ(total_degree_set(2).size(), 6u);
    EXPECT_EQ(total_degree_set(3).size(), 10u);
    for (int d = 1; d <= 15; ++d) {
        EXPECT_EQ(static_cast<std::int64_t>(total_degree_set(d).size()), total_degree_count(d));
    }
    EXPECT_THROW(total_degree_set(0), PreconditionError);
}

TEST(MonomialSet, RejectsMalformedSupports)
{
    EXPECT_THROW(MonomialSet({}), PreconditionError);
    EXPECT_THROW(MonomialSet({{0, 0}, {0, 0}}), PreconditionError);
    EXPECT_THROW(MonomialSet({{-1, 0}}), PreconditionError);
}

TEST(MonomialSet, CanonicalOrderIsGradedLex)
{
    const MonomialSet m({{0, 2}, {1, 1}, {0, 0}, {2, 0}, {0, 1}, {1, 0}});
    const std::vector<Exponent> want = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
    EXPECT_EQ(m.exponents(), want);
    EXPECT_EQ(m.index_of({1, 1}), 4u);
    EXPECT_EQ(m.index_of({3, 0}), MonomialSet::npos);
}

TEST(Parameters, BoxTwoTwo)
{
    const auto p = parameters(box_set(2, 2));
    EXPECT_EQ(p.D, 4);
    EXPECT_EQ(p.R, 4);
    EXPECT_EQ(p.s, 1);
    EXPECT_EQ(p.t, 1);
    EXPECT_EQ(p.S, 8);
    EXPECT_EQ(*p.rho, q("2/3"));
    EXPECT_EQ(*p.sigma, q("4/3"));
    const long double C = naive_C(4, 4);
    EXPECT_NEAR(static_cast<double>(C), 5.2797, 1e-4);
    EXPECT_LE(*p.C_lower, Rational(static_cast<double>(C)));
    EXPECT_GE(*p.C_upper, Rational(static_cast<double>(C)) - q("1/1000000000000"));
    EXPECT_LT(*p.C_upper - *p.C_lower, q("1/1000000"));
    EXPECT_LE(*p.C_upper, 8);
}

TEST(Parameters, TotalDegreeTwo)
{
    const auto p = parameters(total_degree_set(2));
    EXPECT_EQ(p.D, 6);
    EXPECT_EQ(p.R, 8);
    EXPECT_EQ(*p.rho, q("8/15"));
    EXPECT_EQ(*p.sigma, q("8/5"));
    EXPECT_EQ(*p.sigma, 3 * *p.rho);
    EXPECT_NEAR(p.C_upper->get_d(), static_cast<double>(naive_C(6, 8)), 1e-6);
    EXPECT_NEAR(p.C_upper->get_d(), 5.03, 5e-3);
    EXPECT_LE(*p.C_upper, 6);
}

TEST(Parameters, BoxIdentitiesOnGrid)
{
    for (int b = 2; b <= 12; ++b) {
        for (int g = 2; g <= 12; ++g) {
            const auto p = parameters(box_set(b, g));
            EXPECT_EQ(p.D, b * g);
            EXPECT_EQ(2 * p.R, p.D * (g + b - 2));
            EXPECT_EQ(p.S, 2 * p.R);
            EXPECT_LE(*p.C_upper, 2 * p.D);
            EXPECT_LE(std::max(Rational(1, b), Rational(1, g)), *p.rho);
            EXPECT_LE(*p.rho, Rational(1, b) + Rational(1, g));
            EXPECT_NEAR(p.C_upper->get_d(), static_cast<double>(naive_C(p.D, p.R)), 1e-5);
        }
    }
}

TEST(Parameters, SumsAgreeWithListedSets)
{
    for (int d = 1; d <= 8; ++d) {
        const auto a = parameters(total_degree_set(d));
        const auto b = parameters_from_sums(a.D, a.R, a.s, a.t);
        EXPECT_EQ(a.S, b.S);
        EXPECT_EQ(a.rho, b.rho);
        EXPECT_EQ(a.C_upper, b.C_upper);
    }
}

TEST(Parameters, SingletonHasNoExponents)
{
    const auto p = parameters(MonomialSet({{0, 0}}));
    EXPECT_EQ(p.D, 1);
    EXPECT_FALSE(p.rho.has_value());
    EXPECT_FALSE(p.C_upper.has_value());
}

TEST(PlaneCurve, Evaluation)
{
    const PlaneCurve line = curve({{{0, 1}, 1}, {{1, 0}, -1}});
    EXPECT_EQ(evaluate_curve(line, {2, 2}), 0);
    const PlaneCurve circle = curve({{{2, 0}, 1}, {{0, 2}, 1}, {{0, 0}, -1}});
    EXPECT_EQ(evaluate_curve(circle, {q("3/5"), q("4/5")}), 0);
    const PlaneCurve hyperbola = curve({{{1, 1}, 1}, {{0, 0}, -1}});
    EXPECT_EQ(evaluate_curve(hyperbola, {2, 3}), 5);
}

TEST(PlaneCurve, DegreesAndTrimming)
{
    std::vector<Rational> coeffs(12, Rational(0));
    coeffs[4] = 5;
    const PlaneCurve c(box_set(4, 3), coeffs);
    EXPECT_EQ(c.trimmed().coefficients().size(), 1u);
    EXPECT_THROW(PlaneCurve(box_set(4, 3), std::vector<Rational>(12, Rational(0))), PreconditionError);
    const PlaneCurve mordell = curve({{{0, 2}, 1}, {{3, 0}, -1}, {{0, 0}, 2}});
    EXPECT_EQ(mordell.bidegree(), std::make_pair(3, 2));
    EXPECT_EQ(mordell.total_degree(), 3);
    EXPECT_EQ(mordell.coefficient({3, 0}), -1);
    EXPECT_EQ(mordell.coefficient({1, 0}), 0);
    EXPECT_THROW(PlaneCurve(box_set(2, 2), {1, 2}), PreconditionError);
}

TEST(PlaneCurve, MonomialRows)
{
    const auto r1 = monomial_row(total_degree_set(1), {2, 3});
    EXPECT_EQ(r1, (std::vector<Rational>{1, 2, 3}));
    const auto r2 = monomial_row(box_set(2, 2), {q("1/2"), q("1/3")});
    EXPECT_EQ(r2, (std::vector<Rational>{1, q("1/2"), q("1/3"), q("1/6")}));
    const auto r3 = monomial_row(total_degree_set(3), {0, 0});
    EXPECT_EQ(r3.front(), 1);
    for (std::size_t i = 1; i < r3.size(); ++i) {
        EXPECT_EQ(r3[i], 0);
    }
}
