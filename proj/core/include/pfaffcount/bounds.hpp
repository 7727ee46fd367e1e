#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfaffcount/interval.hpp"
#include "pfaffcount/monomial.hpp"
#include "pfaffcount/rational.hpp"

namespace pfaffcount {

// ---------------------------------------------------------------------------
// Pfaff curves

/// Intervals of the slope split f' <= -1, |f'| <= 1, f' >= 1:
/// 2 * 2^{r(r-1)/2} (beta + alpha - 1)(r alpha + beta + alpha - 1) + 1.
Integer slope_interval_count(int r, int alpha, int beta);
/// Its simplified majorant 2^{1 + r(r-1)/2} ((r+1)(alpha+beta))^{r+1}.
Integer slope_interval_majorant(int r, int alpha, int beta);

struct IntervalBudget {
    /// Inner factor (r + D(beta + D(alpha - 1)))^r as displayed.
    Integer bare_r;
    /// Same with r alpha in place of the bare r.
    Integer r_alpha;
    /// max of the two; the one used downstream.
    Integer used;
};

/// majorant * D^2 2^{r(r-1)} (beta + D(alpha - 1)) (r' + D(beta + D(alpha - 1)))^r.
IntervalBudget thm13_interval_budget(int r, int alpha, int beta, std::int64_t D);

struct Thm13Report {
    int r = 0;
    int alpha = 0;
    int beta = 0;
    Interval log_H;
    int d = 0;
    std::int64_t D = 0;
    Rational rho;
    Integer interval_budget;
    /// 6 d^2 4^{1/rho} 2^rho H^{4 rho}.
    Interval curves_reconstructed;
    /// Cover bound on M(d) with L = 2H: (4 C D 4^{1/rho} + 2)(2H)^rho H^sigma.
    Interval curves_lemma;
    /// max of the two (flagged: the reconstruction is smaller than the lemma value).
    Interval curves_per_interval;
    bool reconstruction_below_lemma = false;
    Integer points_per_curve;
    /// log of budget * curves * points.
    Interval log_pipeline;
    /// 5 sqrt(log H).
    Interval log_simple;

    Interval pipeline_value() const;
    Interval simple_value() const;
    /// Certified: pipeline <= exp(5 sqrt(log H)).
    bool below_simple() const;
};

/// The Pfaff pipeline at a fixed degree d >= 2 for H >= 3.
Thm13Report thm13_pipeline(int r, int alpha, int beta, const Integer& H, int d);
/// Same with log H supplied directly (H may be astronomically large).
Thm13Report thm13_pipeline_log(int r, int alpha, int beta, const Interval& log_H, int d);

/// Degree search range 2..d_max used by thm13_best for a given log H.
int thm13_d_max(double log_H);
/// Pipeline at the minimizing d (argmin in double precision, certified at the minimizer).
Thm13Report thm13_best(int r, int alpha, int beta, const Interval& log_H);
Thm13Report thm13_best(int r, int alpha, int beta, const Integer& H);

/// Probes are real H given by log H (report.log_H).
struct ThresholdProbe {
    Thm13Report report;
};

struct Thm13Threshold {
    /// H0 = mantissa * 2^exponent.
    Integer H0;
    Integer mantissa;
    long exponent = 0;
    Interval log_H0;
    std::vector<ThresholdProbe> probes;
    bool all_probes_pass = false;
    /// log10 of pipeline / simple at the top probe (upper bound).
    double top_log10_ratio = 0;
    int restarts = 0;
};

/// Certified-probe threshold: the least H0 found by doubling the bit length,
/// bisecting it, then bisecting the mantissa (at most 64 steps), such that the
/// best pipeline is <= exp(5 sqrt(log H)) at H0 and at 64 probes with log H
/// spaced linearly on [log H0, 4 log H0].
Thm13Threshold thm13_threshold(int r, int alpha, int beta);

// ---------------------------------------------------------------------------
// Algebraic curves

/// (6d)^10 4^d H^{2/d} (log H)^5 with d = max(b, c); b, c >= 2, H >= 3.
Interval thm14_bound(int b, int c, const Integer& H);

struct Thm14Constants {
    int d = 0;
    int delta = 0;
    bool d_is_b = true;
    MonomialSet M;
    std::int64_t D = 0;
    Integer singular_points;  ///< 2d(2d-1)
    Integer slope_points;     ///< 4d(d-1)
    Integer graphs;           ///< 20 d^3
    Integer subintervals;     ///< 8 d^2 D^2
    Integer bezout_cap;       ///< (b + c) * 2 delta
    Integer per_graph_coeff;  ///< 80 d^3 delta^3 4^d
    int box_factor = 4;
    Integer final_coeff;      ///< 100 (2d)^10 4^d delta^5
    Rational exponent;        ///< 2/d + 2/delta
};

/// Intermediate budgets of the algebraic-curve assembly; rejects delta < d.
Thm14Constants thm14_pipeline_constants(int b, int c, int delta);

struct Thm14Pipeline {
    int d = 0;
    int delta = 0;  ///< least integer exceeding log H
    bool small_H_regime = false;  ///< delta < d
    Interval assembled;           ///< final_coeff * H^{2/d + 2/delta} at max(delta, d)
    std::optional<Integer> trivial;  ///< c * #{x : H(x) <= H}, small-H regime only
    Interval value;
};

Thm14Pipeline thm14_pipeline(int b, int c, const Integer& H);

enum class BoxCase { i = 1, ii = 2, iii = 3, iv = 4 };
std::string to_string(BoxCase c);

struct BoxReduction {
    BoxCase box_case = BoxCase::i;
    PlaneCurve curve;
    RationalPoint point;
};

/// y^c F(x, 1/y); requires a term independent of y.
PlaneCurve reciprocal_y(const PlaneCurve& F);
/// x^b F(1/x, y); requires a term independent of x.
PlaneCurve reciprocal_x(const PlaneCurve& F);
/// x^b y^c F(1/x, 1/y).
PlaneCurve reciprocal_xy(const PlaneCurve& F);
/// Applies the coordinate map of a case to a point.
RationalPoint box_map(BoxCase c, const RationalPoint& p);

/// Moves a point of F into [-1, 1]^2 by the case map; P must lie on F.
BoxReduction box_reduce(const PlaneCurve& F, const RationalPoint& P);

} // namespace pfaffcount
