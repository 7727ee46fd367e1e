#include <gtest/gtest.h>

#include <cmath>

#include <pfaffcount/bounds.hpp>
#include <pfaffcount/errors.hpp>
#include <pfaffcount/pfaffian.hpp>

using namespace pfaffcount;

namespace {

Rational q(const char* text) { return parse_rational(text); }

double log_thm14(int b, int c, double H)
{
    const int d = std::max(b, c);
    return 10 * std::log(6.0 * d) + d * std::log(4.0) + (2.0 / d) * std::log(H) + 5 * std::log(std::log(H));
}

} // namespace

TEST(SlopeIntervals, CountAndMajorant)
{
    EXPECT_EQ(slope_interval_count(1, 1, 1), 5);
    EXPECT_EQ(slope_interval_majorant(1, 1, 1), 32);
    for (int r = 1; r <= 3; ++r) {
        for (int a = 1; a <= 3; ++a) {
            for (int b = 1; b <= 3; ++b) {
                EXPECT_LE(slope_interval_count(r, a, b), slope_interval_majorant(r, a, b));
            }
        }
    }
}

TEST(IntervalBudget, ListedValues)
{
    for (std::int64_t D = 2; D <= 12; ++D) {
        EXPECT_EQ(thm13_interval_budget(1, 1, 1, D).used, Integer(32 * D * D * (D + 1)));
    }
    EXPECT_EQ(thm13_interval_budget(1, 1, 1, 6).used, 8064);
    const auto b = thm13_interval_budget(2, 3, 1, 6);
    EXPECT_GT(b.r_alpha, b.bare_r);
    EXPECT_EQ(b.used, b.r_alpha);
}

TEST(PfaffPipeline, ExponentOfH)
{
    for (int d = 2; d <= 20; ++d) {
        const auto rep = thm13_pipeline(1, 1, 1, Integer(1000), d);
        EXPECT_EQ(rep.rho, make_rational(8, 3 * (d + 3)));
        EXPECT_EQ(4 * rep.rho, make_rational(32, 3 * (d + 3)));
        EXPECT_EQ(rep.D, (d + 1) * (d + 2) / 2);
    }
}

TEST(PfaffPipeline, ComponentsMultiply)
{
    const auto rep = thm13_pipeline(1, 1, 2, Integer(100000), 4);
    const double want = std::log(rep.interval_budget.get_d()) + std::log(rep.curves_per_interval.mid_double()) +
                        std::log(rep.points_per_curve.get_d());
    EXPECT_NEAR(rep.log_pipeline.mid_double(), want, 1e-9 * std::abs(want));
    EXPECT_EQ(rep.points_per_curve, zero_count_bound(1, 1, 2, 4));
    EXPECT_NEAR(rep.log_simple.mid_double(), 5 * std::sqrt(std::log(100000.0)), 1e-12);
    EXPECT_TRUE(rep.curves_lemma.certainly_le(rep.curves_per_interval) ||
                rep.curves_reconstructed.certainly_le(rep.curves_per_interval));
}

TEST(PfaffPipeline, EventuallyIncreasing)
{
    for (int d = 10; d < 30; ++d) {
        const auto a = thm13_pipeline(1, 1, 1, Integer(1000), d);
        const auto b = thm13_pipeline(1, 1, 1, Integer(1000), d + 1);
        EXPECT_TRUE(a.log_pipeline.certainly_lt(b.log_pipeline)) << d;
    }
    for (long H : {10L, 100L, 1000L, 10000L}) {
        const auto a = thm13_pipeline(1, 1, 1, Integer(H), 4);
        const auto b = thm13_pipeline(1, 1, 1, Integer(10 * H), 4);
        EXPECT_TRUE(a.log_pipeline.certainly_lt(b.log_pipeline)) << H;
    }
}

TEST(PfaffPipeline, Preconditions)
{
    EXPECT_THROW(thm13_pipeline(1, 1, 1, Integer(2), 4), PreconditionError);
    EXPECT_THROW(thm13_pipeline(1, 1, 1, Integer(100), 1), PreconditionError);
    EXPECT_THROW(thm13_pipeline(0, 1, 1, Integer(100), 3), PreconditionError);
}

TEST(PfaffPipeline, MinimizerOfTwoTerms)
{
    // 4^t H^{4/t} is least at t = sqrt(4 log H / log 4), with value exp(4 sqrt(log 4 log H)).
    const double log_h = 100;
    const double t = std::sqrt(4 * log_h / std::log(4.0));
    const double value = t * std::log(4.0) + 4 * log_h / t;
    EXPECT_NEAR(value, 4 * std::sqrt(std::log(4.0) * log_h), 1e-9);
    EXPECT_NEAR(value, 47.1, 0.05);
    EXPECT_LT(4 * std::sqrt(std::log(4.0)), 5);
    for (double dt : {-0.5, 0.5}) {
        EXPECT_GT((t + dt) * std::log(4.0) + 4 * log_h / (t + dt), value);
    }
}

TEST(PfaffBest, PicksTheMinimizingDegree)
{
    const Interval log_h = log(Interval(Integer("1000000000000000000000000000000"), 192));
    const auto best = thm13_best(1, 1, 1, log_h);
    for (int d = 2; d <= thm13_d_max(log_h.mid_double()); d += 7) {
        const auto other = thm13_pipeline_log(1, 1, 1, log_h, d);
        EXPECT_LE(best.log_pipeline.lo_double(), other.log_pipeline.hi_double() + 1e-9) << d;
    }
}

TEST(PfaffThreshold, MonotoneAndDominating)
{
    const auto a = thm13_threshold(1, 1, 1);
    const auto b = thm13_threshold(1, 1, 2);
    const auto c = thm13_threshold(1, 2, 2);
    EXPECT_LE(a.H0, b.H0);
    EXPECT_LE(b.H0, c.H0);
    EXPECT_TRUE(a.all_probes_pass);
    EXPECT_EQ(a.probes.size(), 64u);
    EXPECT_EQ(a.H0, a.mantissa << static_cast<unsigned long>(a.exponent));
    EXPECT_TRUE(thm13_best(1, 1, 1, a.log_H0).below_simple());

    const auto squared = thm13_best(1, 1, 1, a.log_H0 * Interval(2L, 192));
    EXPECT_TRUE(squared.pipeline_value().certainly_lt(squared.simple_value()));
}

TEST(AlgebraicBound, ListedValue)
{
    const Interval b = thm14_bound(2, 2, Integer(100));
    const double want = std::pow(12.0, 10) * 16 * 100 * std::pow(std::log(100.0), 5);
    EXPECT_NEAR(b.hi_double(), 2.05e17, 0.01 * 2.05e17);
    EXPECT_NEAR(b.hi_double(), want, 1e-9 * want);
    const Interval exact = Interval(Integer(1600) * 61917364224, 192) * pow(log(Interval(100L, 192)), 5UL);
    EXPECT_FALSE(exact.certainly_lt(b));
    EXPECT_FALSE(b.certainly_lt(exact));
}

TEST(AlgebraicBound, MatchesLogFormula)
{
    for (int b = 2; b <= 6; ++b) {
        for (int c = 2; c <= 6; ++c) {
            for (long H : {3L, 100L, 123456L}) {
                EXPECT_NEAR(std::log(thm14_bound(b, c, Integer(H)).hi_double()), log_thm14(b, c, H), 1e-9);
            }
        }
    }
}

TEST(AlgebraicBound, DoublingH)
{
    for (int d : {2, 3, 5}) {
        const double a = thm14_bound(d, 2, Integer(1000)).mid_double();
        const double b = thm14_bound(d, 2, Integer(2000)).mid_double();
        const double logs = std::pow(std::log(2000.0) / std::log(1000.0), 5);
        EXPECT_NEAR(b / a / logs, std::pow(2.0, 2.0 / d), 1e-9);
    }
}

TEST(AlgebraicBound, Preconditions)
{
    EXPECT_THROW(thm14_bound(1, 2, Integer(100)), PreconditionError);
    EXPECT_THROW(thm14_bound(2, 2, Integer(2)), PreconditionError);
}

TEST(AlgebraicConstants, DegreeTwo)
{
    const auto k = thm14_pipeline_constants(2, 2, 2);
    EXPECT_EQ(k.singular_points, 12);
    EXPECT_EQ(k.slope_points, 8);
    EXPECT_EQ(k.graphs, 160);
    EXPECT_EQ(k.D, 4);
    EXPECT_EQ(k.subintervals, 8 * 4 * 16);
    EXPECT_EQ(k.bezout_cap, 16);
    EXPECT_LE(k.bezout_cap, 2 * 2 * 2 * 2);
    EXPECT_EQ(k.box_factor, 4);
    EXPECT_EQ(k.exponent, 2);
}

TEST(AlgebraicConstants, MonomialChoiceFollowsTheLargerDegree)
{
    const auto xb = thm14_pipeline_constants(3, 2, 5);
    EXPECT_TRUE(xb.d_is_b);
    EXPECT_EQ(xb.M, box_set(3, 5));
    const auto yc = thm14_pipeline_constants(2, 3, 5);
    EXPECT_FALSE(yc.d_is_b);
    EXPECT_EQ(yc.M, box_set(5, 3));
    EXPECT_EQ(yc.exponent, q("2/3") + q("2/5"));
    EXPECT_EQ(yc.final_coeff, 100 * Integer(6 * 6 * 6 * 6 * 6) * Integer(6 * 6 * 6 * 6 * 6) * 64 * 3125);
    EXPECT_THROW(thm14_pipeline_constants(3, 2, 2), PreconditionError);
}

TEST(AlgebraicPipeline, DominatesTheSimpleBoundEventually)
{
    // log 5 < 2 < d = 3.
    const auto small = thm14_pipeline(3, 2, Integer(5));
    EXPECT_TRUE(small.small_H_regime);
    ASSERT_TRUE(small.trivial.has_value());
    EXPECT_TRUE(small.value.certainly_le(small.assembled));
    const auto large = thm14_pipeline(3, 2, Integer("1000000000000"));
    EXPECT_FALSE(large.small_H_regime);
    EXPECT_GT(large.delta, std::log(1e12));
}

TEST(BoxReduce, CaseTwoTransformOfParabola)
{
    const PlaneCurve F = PlaneCurve::from_terms({{{0, 1}, 1}, {{2, 0}, -1}});
    const PlaneCurve G = reciprocal_y(F);
    EXPECT_EQ(G.coefficient({0, 0}), 1);
    EXPECT_EQ(G.coefficient({2, 1}), -1);
    EXPECT_EQ(G.trimmed().coefficients().size(), 2u);
    const RationalPoint P = box_map(BoxCase::ii, {2, 4});
    EXPECT_EQ(P, (RationalPoint{2, q("1/4")}));
    EXPECT_EQ(evaluate_curve(G, P), 0);
    EXPECT_EQ(point_height(P), point_height({2, 4}));
}

TEST(BoxReduce, CasesByCoordinateSize)
{
    const PlaneCurve F = PlaneCurve::from_terms({{{0, 1}, 1}, {{2, 0}, -1}});
    const auto one = box_reduce(F, {q("1/2"), q("1/4")});
    EXPECT_EQ(one.box_case, BoxCase::i);
    EXPECT_EQ(one.point, (RationalPoint{q("1/2"), q("1/4")}));

    const auto four = box_reduce(F, {2, 4});
    EXPECT_EQ(four.box_case, BoxCase::iv);
    EXPECT_EQ(four.point, (RationalPoint{q("1/2"), q("1/4")}));
    EXPECT_EQ(evaluate_curve(four.curve, four.point), 0);
    EXPECT_EQ(four.curve.bidegree(), F.bidegree());

    EXPECT_THROW(box_reduce(F, {1, 2}), PreconditionError);
}

TEST(BoxReduce, PreservesHeightAndMembershipOnACurve)
{
    // y^2 = x^3 - 2 has (3, 5) and (3, -5).
    const PlaneCurve F = PlaneCurve::from_terms({{{0, 2}, 1}, {{3, 0}, -1}, {{0, 0}, 2}});
    for (const RationalPoint& p : {RationalPoint{3, 5}, RationalPoint{3, -5}}) {
        const auto r = box_reduce(F, p);
        EXPECT_EQ(r.box_case, BoxCase::iv);
        EXPECT_LE(abs(r.point.x), 1);
        EXPECT_LE(abs(r.point.y), 1);
        EXPECT_EQ(point_height(r.point), point_height(p));
        EXPECT_EQ(evaluate_curve(r.curve, r.point), 0);
    }
}
