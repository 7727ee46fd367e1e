#include <gtest/gtest.h>

#include <cmath>

#include <pfaffcount/cover.hpp>
#include <pfaffcount/errors.hpp>

using namespace pfaffcount;

namespace {

Rational q(const char* text) { return parse_rational(text); }

PfaffianFunction on_exp(std::vector<std::pair<std::vector<int>, Constant>> terms, int beta,
                        std::shared_ptr<const PfaffianChain> chain = chains::exp())
{
    PfaffPolynomial p(2);
    for (const auto& [e, c] : terms) {
        p.add_term(e, c);
    }
    return PfaffianFunction(std::move(chain), p, beta);
}

// Least n >= 1 with 4^{-n / rho} < 1 / (L H^2), in floating point.
int depth_oracle(double rho, double L, double H)
{
    int n = 1;
    while (std::pow(4.0, -n / rho) >= 1 / (L * H * H)) {
        ++n;
    }
    return n;
}

void expect_well_formed(const SubdivisionTree& tree)
{
    ASSERT_FALSE(tree.nodes.empty());
    for (const auto& node : tree.nodes) {
        EXPECT_LT(node.lo, node.hi);
        EXPECT_LE(node.depth, tree.n);
        if (!node.children.empty()) {
            EXPECT_EQ(tree.nodes[node.children.front()].lo, node.lo);
            EXPECT_EQ(tree.nodes[node.children.back()].hi, node.hi);
            for (std::size_t i = 1; i < node.children.size(); ++i) {
                EXPECT_LE(tree.nodes[node.children[i - 1]].hi, tree.nodes[node.children[i]].lo);
            }
        }
    }
    EXPECT_LE(Integer(static_cast<unsigned long>(tree.leaf_count())), tree.recurrence_leaf_bound());
}

} // namespace

TEST(SubdivisionDepth, MatchesFloatingPointSearch)
{
    for (const char* rho : {"2/3", "8/15", "1/2", "4/9"}) {
        for (long H : {3L, 10L, 100L, 1000L}) {
            for (const char* L : {"1", "1/3", "7/2"}) {
                const Rational r = q(rho);
                const Rational l = q(L);
                if (l * H * H < 1) {
                    continue;
                }
                EXPECT_EQ(subdivision_depth(r, l, Integer(H)), depth_oracle(r.get_d(), l.get_d(), H))
                    << rho << " " << L << " " << H;
            }
        }
    }
}

TEST(SubdivisionDepth, LambdaIdentity)
{
    // lambda = 2 D A^{-1/(D-1)} with A^{1/(D-1)} = 2 D 4^{1/rho}, so lambda = 4^{-1/rho} and 2 lambda^rho = 1/2.
    const Rational rho = q("2/3");
    const double lambda = std::pow(4.0, -1 / rho.get_d());
    EXPECT_NEAR(2 * std::pow(lambda, rho.get_d()), 0.5, 1e-15);
    const int n = subdivision_depth(rho, 1, Integer(10));
    EXPECT_LT(std::pow(lambda, n), 1.0 / 100);
    EXPECT_GE(std::pow(lambda, n - 1), 1.0 / 100);
}

TEST(ThresholdSubdivision, LinearFunctionIsOneSmallLeaf)
{
    const auto f = on_exp({{{1, 0}, Constant(q("1/3"))}, {{0, 0}, Constant(2)}}, 1);
    const auto tree = threshold_subdivision(f, -1, 2, box_set(2, 2), Integer(10));
    ASSERT_EQ(tree.nodes.size(), 1u);
    EXPECT_EQ(tree.nodes[0].kind, LeafKind::small_derivative);
    EXPECT_TRUE(check_small_leaf(f, tree, 0));
    expect_well_formed(tree);
}

TEST(ThresholdSubdivision, HalfSquareNeverCrossesThresholds)
{
    const auto f = on_exp({{{2, 0}, Constant(q("1/2"))}}, 2);
    const auto tree = threshold_subdivision(f, 0, q("9/10"), box_set(2, 2), Integer(4));
    ASSERT_EQ(tree.nodes.size(), 1u);
    EXPECT_EQ(tree.nodes[0].kind, LeafKind::small_derivative);
    EXPECT_TRUE(check_small_leaf(f, tree, 0));
    EXPECT_TRUE(Interval(1L, 64).certainly_lt(tree.threshold(2, 0)));
}

TEST(ThresholdSubdivision, TreeConstants)
{
    const auto f = on_exp({{{2, 0}, Constant(q("1/2"))}}, 2);
    const auto tree = threshold_subdivision(f, 0, q("9/10"), box_set(2, 2), Integer(4));
    EXPECT_EQ(tree.D, 4);
    EXPECT_EQ(tree.rho, q("2/3"));
    EXPECT_NEAR(tree.a_root.mid_double(), 2 * 4 * std::pow(4.0, 1.5), 1e-9);
    EXPECT_NEAR(tree.lambda.mid_double(), std::pow(4.0, -1.5), 1e-12);
    EXPECT_EQ(tree.n, depth_oracle(2.0 / 3, 0.9, 4));
    EXPECT_EQ(tree.recurrence_leaf_bound(), (Integer(1) << (tree.n + 1)) - 1);
    // k! A^{k/(D-1)} L^{1-k} at depth 0.
    const double A = tree.a_root.mid_double();
    EXPECT_NEAR(tree.threshold(2, 0).mid_double(), 2 * A * A / 0.9, 1e-6 * A * A);
}

TEST(ThresholdSubdivision, SteepExponentialSplits)
{
    // f = e^{cx} / c on [-1, 0]: f' = e^{cx} <= 1 and f^(k) = c^{k-1} e^{cx}.
    const auto f = on_exp({{{0, 1}, Constant(q("1/4096"))}}, 1, chains::exp(4096));
    const auto tree = threshold_subdivision(f, -1, 0, box_set(2, 2), Integer(50));
    expect_well_formed(tree);
    EXPECT_GT(tree.nodes.size(), 1u);
    EXPECT_GE(tree.small_leaf_count(), 1u);
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        if (tree.nodes[i].kind == LeafKind::small_derivative) {
            EXPECT_TRUE(check_small_leaf(f, tree, i));
        }
    }
}

TEST(ThresholdSubdivision, Preconditions)
{
    const auto steep = on_exp({{{1, 0}, Constant(2)}}, 1);
    EXPECT_THROW(threshold_subdivision(steep, 0, 1, box_set(2, 2), Integer(4)), PreconditionError);
    const auto flat = on_exp({{{1, 0}, Constant(q("1/2"))}}, 1);
    EXPECT_THROW(threshold_subdivision(flat, 0, q("1/100"), box_set(2, 2), Integer(4)), PreconditionError);
    EXPECT_THROW(threshold_subdivision(flat, 1, 0, box_set(2, 2), Integer(4)), PreconditionError);
    EXPECT_THROW(threshold_subdivision(flat, 0, 1, MonomialSet({{0, 0}}), Integer(4)), PreconditionError);
}
