#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pfaffcount/rational.hpp"

namespace pfaffcount {

/// Exponent pair (h, k) of the monomial x^h y^k.
struct Exponent {
    int h = 0;
    int k = 0;

    int degree() const noexcept { return h + k; }
    friend bool operator==(const Exponent&, const Exponent&) = default;
};

/// Graded lex: total degree ascending, then the x exponent descending, so
/// degree one comes out as (1, x, y).
bool graded_lex_less(const Exponent& a, const Exponent& b);

/// Finite set J of exponent pairs, stored in graded lex order.
class MonomialSet {
public:
    /// Sorts into canonical order; rejects an empty list, negative exponents and duplicates.
    explicit MonomialSet(std::vector<Exponent> exponents);

    std::size_t size() const noexcept { return exponents_.size(); }
    const std::vector<Exponent>& exponents() const noexcept { return exponents_; }
    bool contains(const Exponent& e) const;
    /// Position of e in canonical order, or npos.
    std::size_t index_of(const Exponent& e) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    friend bool operator==(const MonomialSet&, const MonomialSet&) = default;

private:
    std::vector<Exponent> exponents_;
};

/// M(beta, gamma) = { x^h y^k : h < beta, k < gamma }.
MonomialSet box_set(int beta, int gamma);

/// All monomials of total degree <= d.
MonomialSet total_degree_set(int d);

/// Closed-form size of total_degree_set(d): (d+1)(d+2)/2.
std::int64_t total_degree_count(std::int64_t d);

/// Counting parameters of a monomial set:
///   D = |J|, R = sum(h + k), s = max h, t = max k, S = D(s + t),
///   rho = 2R / (D(D-1)), sigma = 2S / (D(D-1)), C = (D! D^R)^{2/(D(D-1))} + 1.
/// C is irrational in general and is carried as a certified rational bracket
/// [C_lower, C_upper] of width below 1e-6.
struct MonomialParameters {
    std::int64_t D = 0;
    std::int64_t R = 0;
    std::int64_t s = 0;
    std::int64_t t = 0;
    std::int64_t S = 0;
    // Unavailable (empty) when D == 1.
    std::optional<Rational> rho;
    std::optional<Rational> sigma;
    std::optional<Rational> C_upper;
    std::optional<Rational> C_lower;
};

MonomialParameters parameters(const MonomialSet& m);
/// Same from the sums D = |J|, R, s, t (used when J is too large to list).
MonomialParameters parameters_from_sums(std::int64_t D, std::int64_t R, std::int64_t s, std::int64_t t);

/// Bivariate polynomial G whose monomials lie in a support set M.
/// Coefficients are aligned with support.exponents().
class PlaneCurve {
public:
    PlaneCurve(MonomialSet support, std::vector<Rational> coefficients);

    /// Builds the support from the terms themselves (zero terms dropped).
    static PlaneCurve from_terms(const std::vector<std::pair<Exponent, Rational>>& terms);

    const MonomialSet& support() const noexcept { return support_; }
    const std::vector<Rational>& coefficients() const noexcept { return coefficients_; }
    /// Coefficient of x^h y^k (zero when outside the support).
    Rational coefficient(const Exponent& e) const;

    /// (max h, max k) over nonzero terms.
    std::pair<int, int> bidegree() const;
    int total_degree() const;

    /// Same polynomial, support reduced to its nonzero terms.
    PlaneCurve trimmed() const;

private:
    MonomialSet support_;
    std::vector<Rational> coefficients_;
};

Rational evaluate_curve(const PlaneCurve& g, const RationalPoint& p);

/// (x^h y^k) over J in canonical order.
std::vector<Rational> monomial_row(const MonomialSet& m, const RationalPoint& p);

} // namespace pfaffcount
