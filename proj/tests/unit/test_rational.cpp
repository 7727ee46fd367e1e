#include <gtest/gtest.h>

#include <pfaffcount/errors.hpp>
#include <pfaffcount/rational.hpp>

#include "oracles.hpp"

using namespace pfaffcount;

namespace {

Rational q(const char* text) { return parse_rational(text); }

std::vector<Rational> brute_in(const Rational& lo, const Rational& hi, long H)
{
    std::vector<Rational> out;
    for (const auto& r : oracle::rationals(H)) {
        if (r >= lo && r <= hi) {
            out.push_back(r);
        }
    }
    return out;
}

} // namespace

TEST(Rational, HeightOfSingleRationals)
{
    EXPECT_EQ(height(q("0")), 1);
    EXPECT_EQ(height(q("3/2")), 3);
    EXPECT_EQ(height(q("-7/9")), 9);
    EXPECT_EQ(height(make_rational(6, -4)), 3);
}

TEST(Rational, PointHeight)
{
    EXPECT_EQ(point_height({q("0"), q("0")}), 1);
    EXPECT_EQ(point_height({q("2"), q("4")}), 4);
    EXPECT_EQ(point_height({make_rational(6, 10), make_rational(8, 10)}), 5);
}

TEST(Rational, ParseAndFormatRoundTrip)
{
    for (const char* text : {"0", "1", "-1", "3/2", "-7/9", "123456789012345678901234567890/11"}) {
        EXPECT_EQ(format_rational(parse_rational(text)), text);
    }
    EXPECT_EQ(format_rational(parse_rational("4/6")), "2/3");
    EXPECT_EQ(format_point(parse_point("1/2,-3")), "1/2,-3");
}

TEST(Rational, MalformedInputIsRejected)
{
    for (const char* text : {"", "/", "1/", "a/2", "1/0", "1//2", " 1", "--1", "+"}) {
        EXPECT_THROW(parse_rational(text), FormatError) << text;
    }
    EXPECT_THROW(make_rational(1, 0), PreconditionError);
    EXPECT_THROW(HeightBound(0), PreconditionError);
}

TEST(Rational, EnumerationSmallCases)
{
    const auto h1 = enumerate_rationals(HeightBound(1));
    ASSERT_EQ(h1.size(), 3u);
    EXPECT_EQ(h1[0], -1);
    EXPECT_EQ(h1[1], 0);
    EXPECT_EQ(h1[2], 1);

    const auto h2 = enumerate_rationals(HeightBound(2));
    EXPECT_EQ(h2.size(), 7u);

    const auto h4 = enumerate_rationals(HeightBound(4));
    EXPECT_TRUE(std::binary_search(h4.begin(), h4.end(), q("1/4")));
    EXPECT_TRUE(std::binary_search(h4.begin(), h4.end(), q("3/4")));
    EXPECT_FALSE(std::binary_search(h4.begin(), h4.end(), q("1/5")));
}

TEST(Rational, EnumerationMatchesBruteForce)
{
    for (long H = 1; H <= 40; ++H) {
        const auto got = enumerate_rationals(HeightBound(H));
        const auto want = oracle::rationals(H);
        ASSERT_EQ(got.size(), want.size()) << "H=" << H;
        EXPECT_TRUE(std::equal(got.begin(), got.end(), want.begin())) << "H=" << H;
        EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
        EXPECT_EQ(count_rationals(HeightBound(H)), static_cast<std::int64_t>(want.size()));
        EXPECT_EQ(got.size() % 2, 1u);
    }
}

TEST(Rational, DenominatorSweepVisitsReducedPairsInOrder)
{
    std::vector<std::pair<std::int64_t, std::int64_t>> seen;
    for_each_rational_by_denominator(6, 2, 4, [&](std::int64_t a, std::int64_t b) { seen.emplace_back(a, b); });
    for (std::size_t i = 1; i < seen.size(); ++i) {
        const auto& [a0, b0] = seen[i - 1];
        const auto& [a1, b1] = seen[i];
        EXPECT_TRUE(b0 < b1 || (b0 == b1 && a0 < a1));
    }
    std::size_t expected = 0;
    for (long b = 2; b <= 4; ++b) {
        for (long a = -6; a <= 6; ++a) {
            expected += std::gcd(std::abs(a), b) == 1 ? 1 : 0;
        }
    }
    EXPECT_EQ(seen.size(), expected);
}

TEST(Rational, IntervalQueriesFromExamples)
{
    const auto a = rationals_in_interval(q("2/5"), q("3/5"), HeightBound(5));
    ASSERT_EQ(a.size(), 3u);
    EXPECT_EQ(a[0], q("2/5"));
    EXPECT_EQ(a[1], q("1/2"));
    EXPECT_EQ(a[2], q("3/5"));

    const auto b = rationals_in_interval(q("49/100"), q("51/100"), HeightBound(2));
    ASSERT_EQ(b.size(), 1u);
    EXPECT_EQ(b[0], q("1/2"));

    EXPECT_TRUE(rationals_in_interval(q("3/10"), q("2/5"), HeightBound(2)).empty());
}

TEST(Rational, IntervalQueriesMatchBruteForce)
{
    const char* ends[] = {"-3", "-7/3", "-1", "-1/2", "0", "1/7", "2/9", "1/3", "5/11", "1", "3/2", "13/4", "5"};
    for (long H : {1L, 3L, 7L, 12L}) {
        for (const char* lo : ends) {
            for (const char* hi : ends) {
                if (q(lo) > q(hi)) {
                    continue;
                }
                EXPECT_EQ(rationals_in_interval(q(lo), q(hi), HeightBound(H)), brute_in(q(lo), q(hi), H))
                    << "[" << lo << ", " << hi << "] H=" << H;
            }
        }
    }
}

TEST(Rational, IntervalQueryFarFromOriginIsCheap)
{
    const Integer H("1000000000000");
    const Rational lo = Rational(H - 1) + q("1/3");
    const auto got = rationals_in_interval(lo, Rational(H), HeightBound(H));
    ASSERT_FALSE(got.empty());
    EXPECT_EQ(got.back(), Rational(H));
    for (const auto& r : got) {
        EXPECT_LE(height(r), H);
    }
}

TEST(Rational, SimplestBetween)
{
    EXPECT_EQ(simplest_rational_between(q("2/5"), q("3/5")), q("1/2"));
    EXPECT_EQ(simplest_rational_between(q("-1/3"), q("1/3")), q("0"));
    EXPECT_EQ(simplest_rational_between(q("7/2"), q("7/2")), q("7/2"));
    EXPECT_EQ(simplest_rational_between(q("31/10"), q("16/5")), q("16/5"));
    for (const char* lo : {"1/7", "2/9", "-5/3"}) {
        const Rational l = q(lo);
        const Rational h = l + q("1/50");
        const Rational s = simplest_rational_between(l, h);
        for (long den = 1; den < s.get_den().get_si(); ++den) {
            const Rational a = l * den;
            const Rational b = h * den;
            Integer first;
            Integer last;
            mpz_cdiv_q(first.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
            mpz_fdiv_q(last.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
            EXPECT_GT(first, last) << lo << " den=" << den;
        }
    }
}
