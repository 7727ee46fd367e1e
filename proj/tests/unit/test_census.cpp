#include <gtest/gtest.h>

#include <cmath>

#include <pfaffcount/census.hpp>
#include <pfaffcount/errors.hpp>

#include "oracles.hpp"

using namespace pfaffcount;

namespace {

Rational q(const char* text) { return parse_rational(text); }

PlaneCurve curve(std::vector<std::pair<Exponent, Rational>> terms) { return PlaneCurve::from_terms(terms); }

std::set<oracle::Point> as_set(const std::vector<RationalPoint>& pts)
{
    std::set<oracle::Point> out;
    for (const auto& p : pts) {
        out.insert({p.x, p.y});
    }
    return out;
}

// Every pair of height-<=H rationals tested against F.
std::set<oracle::Point> brute_census(const PlaneCurve& F, long H)
{
    const auto rs = oracle::rationals(H);
    std::set<oracle::Point> out;
    for (const auto& x : rs) {
        for (const auto& y : rs) {
            if (evaluate_curve(F, {x, y}) == 0) {
                out.insert({x, y});
            }
        }
    }
    return out;
}

std::vector<PlaneCurve> small_curves()
{
    return {
        curve({{{0, 1}, 1}, {{2, 0}, -1}}),                                     // y = x^2
        curve({{{2, 0}, 1}, {{0, 2}, 1}, {{0, 0}, -1}}),                        // unit circle
        curve({{{0, 2}, 1}, {{3, 0}, -1}}),                                     // cusp
        curve({{{1, 1}, 1}, {{0, 0}, -1}}),                                     // xy = 1
        curve({{{0, 3}, 1}, {{1, 1}, -1}, {{2, 0}, q("-1/4")}, {{0, 0}, 1}}),   // cubic in y
        curve({{{0, 2}, 4}, {{1, 0}, -1}, {{2, 0}, 3}, {{0, 1}, q("1/2")}}),    // conic
        curve({{{2, 2}, 1}, {{2, 0}, -1}, {{0, 2}, -1}, {{0, 0}, q("3/4")}}),   // bidegree (2, 2)
        curve({{{3, 0}, 2}, {{0, 1}, -9}, {{1, 0}, 1}}),                        // graph of a cubic
    };
}

} // namespace

TEST(CensusAlgebraic, Parabola)
{
    const auto rec = census_algebraic(curve({{{0, 1}, 1}, {{2, 0}, -1}}), Integer(4));
    EXPECT_EQ(rec.N, 7);
    EXPECT_EQ(rec.status, CensusStatus::exact);
    const std::set<oracle::Point> want = {{0, 0}, {1, 1}, {-1, 1}, {2, 4}, {-2, 4}, {q("1/2"), q("1/4")},
                                          {q("-1/2"), q("1/4")}};
    EXPECT_EQ(as_set(rec.points), want);
}

TEST(CensusAlgebraic, UnitCircleAgainstPythagoreanOracle)
{
    const PlaneCurve F = curve({{{2, 0}, 1}, {{0, 2}, 1}, {{0, 0}, -1}});
    for (long H : {1L, 5L, 13L, 65L, 200L}) {
        const auto rec = census_algebraic(F, Integer(H));
        EXPECT_EQ(as_set(rec.points), oracle::unit_circle(H)) << H;
    }
    // (+-1, 0), (0, +-1), (+-3/5, +-4/5), (+-4/5, +-3/5).
    EXPECT_EQ(census_algebraic(F, Integer(5)).N, 12);
}

TEST(CensusAlgebraic, CuspAgainstParametrization)
{
    const PlaneCurve F = curve({{{0, 2}, 1}, {{3, 0}, -1}});
    for (long H : {10L, 100L, 1000L}) {
        const auto rec = census_algebraic(F, Integer(H));
        EXPECT_EQ(as_set(rec.points), oracle::monomial_curve(2, 3, H)) << H;
    }
}

TEST(CensusAlgebraic, QuinticAgainstParametrization)
{
    const PlaneCurve F = curve({{{0, 2}, 1}, {{5, 0}, -1}});
    const std::int64_t want[] = {7, 15};
    const long hs[] = {100, 1000};
    for (int i = 0; i < 2; ++i) {
        const auto rec = census_algebraic(F, Integer(hs[i]));
        EXPECT_EQ(as_set(rec.points), oracle::monomial_curve(2, 5, hs[i]));
        EXPECT_EQ(rec.N, want[i]);
    }
}

TEST(CensusAlgebraic, MatchesBruteForceOnSmallCurves)
{
    for (const auto& F : small_curves()) {
        const auto rec = census_algebraic(F, Integer(12));
        EXPECT_EQ(as_set(rec.points), brute_census(F, 12));
        EXPECT_EQ(rec.N, static_cast<std::int64_t>(rec.points.size()));
        EXPECT_TRUE(std::is_sorted(rec.points.begin(), rec.points.end()));
    }
}

TEST(CensusAlgebraic, RootStrategiesAgree)
{
    for (const auto& F : small_curves()) {
        AlgebraicOptions divisor;
        divisor.strategy = RootStrategy::divisor;
        AlgebraicOptions isolating;
        isolating.strategy = RootStrategy::isolating;
        const auto a = census_algebraic(F, Integer(60), divisor);
        const auto b = census_algebraic(F, Integer(60), isolating);
        EXPECT_EQ(as_set(a.points), as_set(b.points));
    }
}

TEST(CensusAlgebraic, DivisorCapIsEnforced)
{
    AlgebraicOptions o;
    o.strategy = RootStrategy::divisor;
    o.divisor_cap = Integer(10);
    EXPECT_THROW(census_algebraic(curve({{{0, 3}, 1}, {{3, 0}, -1}, {{0, 0}, -2}}), Integer(50), o),
                 PreconditionError);
    o.strategy = RootStrategy::automatic;
    EXPECT_NO_THROW(census_algebraic(curve({{{0, 3}, 1}, {{3, 0}, -1}, {{0, 0}, -2}}), Integer(50), o));
}

TEST(CensusAlgebraic, JobsDoNotChangeTheResult)
{
    const PlaneCurve F = curve({{{0, 2}, 1}, {{3, 0}, -1}, {{0, 0}, 2}});
    AlgebraicOptions one;
    AlgebraicOptions many;
    many.jobs = 6;
    const auto a = census_algebraic(F, Integer(300), one);
    const auto b = census_algebraic(F, Integer(300), many);
    EXPECT_EQ(a.points, b.points);
    EXPECT_EQ(a.N, 2);
}

TEST(CensusAlgebraic, DomainAndConditions)
{
    const PlaneCurve circle = curve({{{2, 0}, 1}, {{0, 2}, 1}, {{0, 0}, -1}});
    AlgebraicOptions arc;
    arc.where = {curve({{{0, 1}, 1}, {{1, 0}, -1}}), curve({{{0, 1}, 1}, {{1, 0}, 1}})};
    const auto rec = census_algebraic(circle, Integer(100), arc);
    std::set<oracle::Point> want;
    for (const auto& p : oracle::unit_circle(100)) {
        if (abs(p.x) <= p.y) {
            want.insert(p);
        }
    }
    EXPECT_EQ(as_set(rec.points), want);
    EXPECT_EQ(rec.N, 33);

    AlgebraicOptions right;
    right.domain.lo = Rational(0);
    for (const auto& p : census_algebraic(circle, Integer(25), right).points) {
        EXPECT_GE(p.x, 0);
    }
}

TEST(CensusAlgebraic, VerticalFibersAreFlagged)
{
    // x (y - x) = 0 contains the whole line x = 0.
    const PlaneCurve F = curve({{{1, 1}, 1}, {{2, 0}, -1}});
    const auto rec = census_algebraic(F, Integer(3));
    ASSERT_EQ(rec.vertical.size(), 1u);
    EXPECT_EQ(rec.vertical[0], 0);
    EXPECT_EQ(as_set(rec.points), brute_census(F, 3));
}

TEST(CensusAlgebraic, SweepsOverTheSmallerDegree)
{
    // x = y^4 - 3: solved over y, one point per y.
    const PlaneCurve F = curve({{{1, 0}, 1}, {{0, 4}, -1}, {{0, 0}, 3}});
    EXPECT_EQ(as_set(census_algebraic(F, Integer(20)).points), brute_census(F, 20));
}

TEST(CensusAlgebraic, RejectsZeroPolynomial)
{
    EXPECT_THROW(census_algebraic(PlaneCurve(box_set(2, 2), {0, 0, 0, 0}), Integer(5)), PreconditionError);
}

TEST(CensusPfaffExact, PowersOfTwo)
{
    const PfaffFamily pow2{"pow2", {}};
    EXPECT_EQ(census_pfaff_exact(pow2, Integer(4)).N, 5);
    EXPECT_EQ(census_pfaff_exact(pow2, Integer(10)).N, 7);
    EXPECT_EQ(census_pfaff_exact(pow2, Integer(100)).N, 13);
    EXPECT_EQ(census_pfaff_exact(pow2, Integer(1000000)).N, 39);
    for (long H = 1; H <= 300; ++H) {
        EXPECT_EQ(census_pfaff_exact(pow2, Integer(H)).N, 2 * oracle::floor_log2(H) + 1) << H;
    }
    const auto rec = census_pfaff_exact(pow2, Integer(10));
    EXPECT_EQ(rec.points.front(), (RationalPoint{-3, q("1/8")}));
    EXPECT_EQ(rec.points.back(), (RationalPoint{3, 8}));
}

TEST(CensusPfaffExact, Exponential)
{
    for (long H : {1L, 10L, 1000000L}) {
        const auto rec = census_pfaff_exact({"exp", {}}, Integer(H));
        ASSERT_EQ(rec.N, 1);
        EXPECT_EQ(rec.points[0], (RationalPoint{0, 1}));
    }
}

TEST(CensusPfaffExact, RationalBases)
{
    // (9/4)^x: x = k/2 gives (3/2)^k.
    const auto rec = census_pfaff_exact({"powq", {{"base", "9/4"}}}, Integer(30));
    for (const auto& p : rec.points) {
        EXPECT_EQ(p.x.get_den() <= 2, true);
        EXPECT_LE(point_height(p), 30);
    }
    // Heights of (3/2)^k: 1, 3, 9, 27, so k in -3..3, x = k/2.
    EXPECT_EQ(rec.N, 7);
    EXPECT_THROW(census_pfaff_exact({"powq", {{"base", "1"}}}, Integer(5)), PreconditionError);
}

TEST(CensusPfaffExact, RootFamily)
{
    // y = x^{2/3}: x = s^3/t^3, y = s^2/t^2.
    const auto rec = census_pfaff_exact({"root", {{"exponent", "2/3"}}}, Integer(100));
    std::set<oracle::Point> want;
    for (const auto& p : oracle::monomial_curve(3, 2, 100)) {
        if (p.x > 0) {
            want.insert({p.x, p.y});
        }
    }
    // monomial_curve(3, 2) lists (t^3, t^2) as (x, y).
    EXPECT_EQ(as_set(rec.points), want);
}

TEST(CensusPfaffExact, RegistryValues)
{
    EXPECT_EQ(family_value({"pow2", {}}, 5), Rational(32));
    EXPECT_FALSE(family_value({"pow2", {}}, q("1/2")).has_value());
    EXPECT_EQ(family_value({"powq", {{"base", "8"}}}, q("2/3")), Rational(4));
    EXPECT_EQ(family_value({"root", {{"exponent", "3/2"}}}, q("4/9")), q("8/27"));
    EXPECT_FALSE(family_value({"root", {{"exponent", "3/2"}}}, q("2")).has_value());
    EXPECT_FALSE(family_fact({"exp", {}}).empty());
    EXPECT_THROW(family_fact({"sin", {}}), PreconditionError);
}

TEST(CensusPfaffNumeric, PowerOfTwoCrossValidated)
{
    const auto f = family_function({"pow2", {}});
    NumericOptions o;
    o.registry = registry_match(f);
    ASSERT_TRUE(o.registry.has_value());
    for (long H : {10L, 100L, 1000L}) {
        const auto rec = census_pfaff_numeric(f, Rational(-H), Rational(H), Integer(H), o);
        EXPECT_EQ(rec.points, census_pfaff_exact({"pow2", {}}, Integer(H)).points) << H;
        EXPECT_TRUE(rec.candidates.empty());
        EXPECT_TRUE(rec.exhausted.empty());
        EXPECT_EQ(rec.status, CensusStatus::lower_bound_with_candidates);
    }
}

TEST(CensusPfaffNumeric, ExponentialWithoutRegistry)
{
    const auto f = chain_function(chains::exp(), 1);
    NumericOptions o;
    o.precision.start = 128;
    const auto rec = census_pfaff_numeric(f, -1, 1, Integer(50), o);
    ASSERT_EQ(rec.points.size(), 1u);
    EXPECT_EQ(rec.points[0], (RationalPoint{0, 1}));
    EXPECT_TRUE(rec.candidates.empty());
    EXPECT_TRUE(rec.exhausted.empty());
}

TEST(CensusPfaffNumeric, UnresolvedRationalsBecomeCandidates)
{
    // 2^x + 1/3 is rational exactly at integers; of height <= 30 for |x| <= 3.
    PfaffPolynomial p(2);
    p.add_term({0, 1}, Constant(1));
    p.add_term({0, 0}, Constant(q("1/3")));
    const PfaffianFunction f(chains::exp2(), p, 1);
    const auto rec = census_pfaff_numeric(f, -5, 5, Integer(30), {});
    EXPECT_FALSE(registry_match(f).has_value());
    for (const auto& pt : rec.points) {
        EXPECT_EQ(pt.x.get_den(), 1);
    }
    EXPECT_EQ(rec.points.size() + rec.candidates.size(), 7u);
}

TEST(CensusPfaffNumeric, JobsDoNotChangeTheResult)
{
    const auto f = family_function({"pow2", {}});
    NumericOptions one;
    NumericOptions many;
    many.jobs = 5;
    EXPECT_EQ(census_pfaff_numeric(f, -40, 40, Integer(40), one).points,
              census_pfaff_numeric(f, -40, 40, Integer(40), many).points);
}

TEST(CensusPfaffNumeric, RegistryDetection)
{
    EXPECT_EQ(registry_match(family_function({"exp", {}}))->name, "exp");
    EXPECT_EQ(registry_match(family_function({"powq", {{"base", "3"}}}))->name, "powq");
    EXPECT_FALSE(registry_match(chain_function(chains::exp(2), 1)).has_value());
    NumericOptions tiny;
    tiny.precision.start = 1;
    EXPECT_THROW(census_pfaff_numeric(family_function({"pow2", {}}), 0, 1, Integer(5), tiny), PreconditionError);
}
