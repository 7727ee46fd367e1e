#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pfaffcount/interval.hpp"
#include "pfaffcount/monomial.hpp"
#include "pfaffcount/pfaffian.hpp"
#include "pfaffcount/rational.hpp"
#include "pfaffcount/roots.hpp"

namespace pfaffcount {

struct RankResult {
    std::size_t rank = 0;
    /// Primitive integer kernel vector (first nonzero entry positive) when
    /// rank < width; the first free column is set to one, other free columns to zero.
    std::optional<std::vector<Integer>> kernel;
};

/// Rank over Q by fraction-free (Bareiss) elimination after clearing row
/// denominators. Rows must share one length.
RankResult exact_rank(const std::vector<std::vector<Rational>>& rows);

struct CoverBlock {
    std::vector<std::size_t> points;
    PlaneCurve curve;
};

struct CoverReport {
    MonomialSet M;
    Integer H;
    std::vector<CoverBlock> blocks;
    /// Cover-size bound enclosure; its upper end is the certified value.
    std::optional<Interval> bound;
};

/// Greedy sweep over x-sorted distinct points: a block grows while its
/// monomial rows have rank <= D - 1 and is closed with a kernel curve.
CoverReport block_cover(const std::vector<RationalPoint>& points, const MonomialSet& M, const Integer& H = Integer(1));

/// True when every block curve vanishes exactly at each of its points and the
/// blocks partition the index range.
bool cover_is_sound(const CoverReport& report, const std::vector<RationalPoint>& points);

/// (4 C D 4^{1/rho} + 2) L^rho H^sigma with C replaced by its certified upper
/// bound. Requires D >= 2, S >= 2R, H >= 1 and L >= 1/H^2.
Interval lemma21_bound(const MonomialSet& M, const Interval& L, const Integer& H);
Interval lemma21_bound(const MonomialSet& M, const Rational& L, const Integer& H);

struct CoverVerification {
    bool ok = false;
    CoverReport report;
};

CoverVerification verify_cover(const std::vector<RationalPoint>& points, const MonomialSet& M, const Interval& L,
                               const Integer& H);

enum class LeafKind { internal, small_derivative, terminal_short };
std::string to_string(LeafKind kind);

struct SubdivisionNode {
    Rational lo;
    Rational hi;
    /// Recursion depth; a small-derivative leaf carries the depth whose thresholds it satisfies.
    int depth = 0;
    LeafKind kind = LeafKind::internal;
    /// Zeros of f^(k) -/+ T_k used to split this node.
    std::vector<RootEnclosure> splits;
    std::vector<std::size_t> children;
};

struct SubdivisionTree {
    std::vector<SubdivisionNode> nodes;  ///< nodes[0] is the root
    std::int64_t D = 0;
    Rational rho;
    Interval a_root;  ///< A^{1/(D-1)} = 2 D 4^{1/rho}
    Interval lambda;  ///< 2 D A^{-1/(D-1)} = 4^{-1/rho}
    int n = 0;        ///< least n with lambda^n < 1/(L H^2)
    Integer H;
    Rational L;
    /// Thresholds k! A^{k/(D-1)} L^{1-k} for every k = 2..D (k = 2 included).
    std::string threshold_variant = "uniform-kappa";
    bool lengths_within_nominal = true;

    std::size_t leaf_count() const;
    std::size_t small_leaf_count() const;
    /// 2^{n+1} - 1: one small leaf per node, two side runs per node, depth <= n.
    Integer recurrence_leaf_bound() const;
    /// Nominal length lambda^depth L of a node.
    Interval nominal_length(int depth) const;
    /// k! A^{k/(D-1)} L^{1-k} at a given depth.
    Interval threshold(int kappa, int depth) const;
};

/// Least n >= 1 with lambda^n < 1 / (L H^2), lambda = 4^{-1/rho}, decided exactly.
int subdivision_depth(const Rational& rho, const Rational& L, const Integer& H);

/// Splits [a, b] at the points where |f^(k)| crosses k! A^{k/(D-1)} L^{1-k}.
/// Requires |f'| <= 1 on [a, b] and b - a >= 1/H^2.
SubdivisionTree threshold_subdivision(const PfaffianFunction& f, const Rational& a, const Rational& b,
                                      const MonomialSet& M, const Integer& H, const RootOptions& options = {});

/// A-posteriori check of |f^(k)| <= threshold, k = 1..D, at `samples`
/// interior points of a small-derivative leaf.
bool check_small_leaf(const PfaffianFunction& f, const SubdivisionTree& tree, std::size_t node, int samples = 10);

} // namespace pfaffcount
