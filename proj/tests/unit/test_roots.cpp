#include <gtest/gtest.h>

#include <cmath>

#include <pfaffcount/errors.hpp>
#include <pfaffcount/roots.hpp>

using namespace pfaffcount;

namespace {

Rational q(const char* text) { return parse_rational(text); }

PfaffianFunction exp_poly(std::vector<std::pair<std::vector<int>, Constant>> terms, int beta,
                          std::shared_ptr<const PfaffianChain> chain = chains::exp())
{
    PfaffPolynomial p(2);
    for (const auto& [e, c] : terms) {
        p.add_term(e, c);
    }
    return PfaffianFunction(std::move(chain), p, beta);
}

bool brackets(const RootEnclosure& r, double value)
{
    return r.lo.get_d() <= value + 1e-12 && value - 1e-12 <= r.hi.get_d();
}

} // namespace

TEST(IsolateZeros, ExpMinusTwo)
{
    // e^x - 2 has the single zero log 2.
    const auto f = exp_poly({{{0, 1}, Constant(1)}, {{0, 0}, Constant(-2)}}, 1);
    const DerivativeTower tower(f, 0);
    const auto zs = isolate_zeros(tower, 0, -5, 5);
    ASSERT_EQ(zs.size(), 1u);
    EXPECT_TRUE(brackets(zs[0], std::log(2.0)));
    EXPECT_LT(Rational(zs[0].hi - zs[0].lo).get_d(), std::ldexp(1.0, -39));
}

TEST(IsolateZeros, ExactRationalZeroIsReportedExactly)
{
    // x - 1/3 on the exp chain.
    const auto f = exp_poly({{{1, 0}, Constant(1)}, {{0, 0}, Constant(q("-1/3"))}}, 1);
    const auto zs = isolate_zeros(DerivativeTower(f, 0), 0, -1, 1);
    ASSERT_EQ(zs.size(), 1u);
    EXPECT_TRUE(zs[0].lo <= q("1/3") && q("1/3") <= zs[0].hi);
}

TEST(IsolateZeros, SeveralZerosInIncreasingOrder)
{
    // x^3 - 2x^2 - x + 2 = (x + 1)(x - 1)(x - 2).
    const auto f = exp_poly({{{3, 0}, Constant(1)}, {{2, 0}, Constant(-2)}, {{1, 0}, Constant(-1)},
                             {{0, 0}, Constant(2)}},
                            3);
    const auto zs = isolate_zeros(DerivativeTower(f, 0), 0, -3, 3);
    ASSERT_EQ(zs.size(), 3u);
    EXPECT_TRUE(brackets(zs[0], -1));
    EXPECT_TRUE(brackets(zs[1], 1));
    EXPECT_TRUE(brackets(zs[2], 2));
}

TEST(IsolateZeros, IdenticallyZeroLevelIsRejected)
{
    const auto f = exp_poly({{{1, 0}, Constant(1)}}, 1);
    const DerivativeTower tower(f, 3);
    EXPECT_TRUE(tower.identically_zero(2));
    EXPECT_THROW(isolate_zeros(tower, 2, 0, 1), PreconditionError);
}

TEST(SignPartition, PowerOfTwoIsMonotoneAndConvex)
{
    const auto f = chain_function(chains::exp2(), 1);
    const auto parts = sign_partition(f, -1, 1, 3);
    ASSERT_EQ(parts.size(), 1u);
    EXPECT_EQ(parts[0].left.lo, -1);
    EXPECT_EQ(parts[0].right.hi, 1);
    ASSERT_EQ(parts[0].profile.size(), 3u);
    for (Sign s : parts[0].profile) {
        EXPECT_EQ(s, Sign::positive);
    }
}

TEST(SignPartition, TangentialZeroSplitsInTwo)
{
    // f = e^x - 1 - x - x^2/2, f' = e^x - 1 - x >= 0 with a double zero at 0.
    const auto f = exp_poly({{{0, 1}, Constant(1)}, {{0, 0}, Constant(-1)}, {{1, 0}, Constant(-1)},
                             {{2, 0}, Constant(q("-1/2"))}},
                            2);
    const auto parts = sign_partition(f, -1, 1, 1);
    ASSERT_EQ(parts.size(), 2u);
    EXPECT_TRUE(brackets(parts[0].right, 0));
    EXPECT_EQ(parts[0].profile[0], Sign::positive);
    EXPECT_EQ(parts[1].profile[0], Sign::positive);
}

TEST(SignPartition, IdenticallyZeroDerivative)
{
    // f = x / 2: f'' vanishes identically.
    const auto f = exp_poly({{{1, 0}, Constant(q("1/2"))}}, 1);
    const auto parts = sign_partition(f, -1, 1, 3);
    ASSERT_EQ(parts.size(), 1u);
    EXPECT_EQ(parts[0].profile[0], Sign::positive);
    EXPECT_EQ(parts[0].profile[1], Sign::zero);
    EXPECT_EQ(parts[0].profile[2], Sign::zero);
}

TEST(SignPartition, ProfilesAreConstantInsidePieces)
{
    const auto f = chain_function(chains::inverse_one_plus_square(), 1);
    const auto parts = sign_partition(f, -3, 3, 3);
    // f' vanishes at 0, f'' at +-1/sqrt 3, f''' at 0 and +-1.
    EXPECT_EQ(parts.size(), 6u);
    const DerivativeTower tower(f, 3);
    for (const auto& piece : parts) {
        const Rational mid = (piece.left.hi + piece.right.lo) / 2;
        for (int j = 1; j <= 3; ++j) {
            const int s = tower.point_sign(j, mid, 256);
            const Sign want = s > 0 ? Sign::positive : (s < 0 ? Sign::negative : Sign::zero);
            EXPECT_EQ(piece.profile[static_cast<std::size_t>(j - 1)], want);
        }
    }
}

TEST(SlopeTrichotomy, PowerOfTwo)
{
    const auto f = chain_function(chains::exp2(), 1);
    const auto parts = slope_trichotomy(f, -2, 2);
    ASSERT_EQ(parts.size(), 2u);
    EXPECT_EQ(parts[0].label, SlopeLabel::middle);
    EXPECT_EQ(parts[1].label, SlopeLabel::ge_one);
    const double cut = -std::log(std::log(2.0)) / std::log(2.0);
    EXPECT_TRUE(brackets(parts[0].right, cut));
    EXPECT_NEAR(cut, 0.529, 1e-3);
}

TEST(SlopeTrichotomy, ExpOnUnitInterval)
{
    const auto parts = slope_trichotomy(chain_function(chains::exp(), 1), 0, 1);
    ASSERT_EQ(parts.size(), 1u);
    EXPECT_EQ(parts[0].label, SlopeLabel::ge_one);
}

TEST(SlopeTrichotomy, GentleLine)
{
    const auto f = exp_poly({{{1, 0}, Constant(q("1/2"))}}, 1);
    const auto parts = slope_trichotomy(f, -10, 10);
    ASSERT_EQ(parts.size(), 1u);
    EXPECT_EQ(parts[0].label, SlopeLabel::middle);
}

TEST(SlopeTrichotomy, SteepDescent)
{
    const auto f = exp_poly({{{0, 1}, Constant(-3)}}, 1, chains::exp());
    const auto parts = slope_trichotomy(f, -3, 1);
    ASSERT_EQ(parts.size(), 2u);
    EXPECT_EQ(parts[0].label, SlopeLabel::middle);
    EXPECT_EQ(parts[1].label, SlopeLabel::le_minus_one);
    EXPECT_TRUE(brackets(parts[0].right, -std::log(3.0)));
}
