#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pfaffcount/interval.hpp"
#include "pfaffcount/monomial.hpp"
#include "pfaffcount/pfaffian.hpp"
#include "pfaffcount/rational.hpp"

namespace pfaffcount {

enum class CensusStatus { exact, lower_bound_with_candidates };
std::string to_string(CensusStatus s);

struct NamedBound {
    std::string name;
    Interval value;
};

struct CensusRecord {
    std::string curve_id;
    Integer H;
    std::int64_t N = 0;
    CensusStatus status = CensusStatus::exact;
    /// Certified points, sorted by (x, y).
    std::vector<RationalPoint> points;
    /// Numeric path only: unique height-<=H rational inside an enclosure that
    /// could not be certified equal.
    std::vector<RationalPoint> candidates;
    /// Numeric path only: x whose enclosure never reached the width target.
    std::vector<Rational> exhausted;
    /// x with F(x, .) identically zero; the whole fiber is counted.
    std::vector<Rational> vertical;
    std::vector<NamedBound> bounds;
    double seconds = 0;
};

/// Closed x-range restriction; either end may be absent.
struct XDomain {
    std::optional<Rational> lo;
    std::optional<Rational> hi;

    bool contains(const Rational& x) const;
};

enum class RootStrategy { automatic, divisor, isolating };

struct AlgebraicOptions {
    XDomain domain;
    /// Extra conditions G(x, y) >= 0 on counted points.
    std::vector<PlaneCurve> where;
    RootStrategy strategy = RootStrategy::automatic;
    /// Divisor search refuses coefficients above this magnitude.
    Integer divisor_cap = Integer("1000000000000");
    int jobs = 1;
};

/// Exact census of F = 0: for every rational of height <= H in the sweep
/// variable, the other coordinate is solved exactly. Sweeps over y when the
/// y-degree exceeds the x-degree.
CensusRecord census_algebraic(const PlaneCurve& F, const Integer& H, const AlgebraicOptions& options = {});

/// Registry of exactly censusable Pfaff families:
///   pow2          y = 2^x
///   exp           y = e^x
///   powq   base   y = q^x, rational q > 0, q != 1
///   root   exponent  y = x^{p/q} on x > 0
struct PfaffFamily {
    std::string name;
    std::map<std::string, std::string> params;
};

/// One-line literature statement the family's exact census relies on.
std::string family_fact(const PfaffFamily& family);
/// Exact value f(x) when it is rational, nullopt when it is irrational.
std::optional<Rational> family_value(const PfaffFamily& family, const Rational& x);
/// The family as a Pfaffian function (P = y_j on the family's chain).
PfaffianFunction family_function(const PfaffFamily& family);
/// Natural domain (x > 0 for root).
OpenInterval family_domain(const PfaffFamily& family);

CensusRecord census_pfaff_exact(const PfaffFamily& family, const Integer& H, const XDomain& domain = {});

struct PrecisionPolicy {
    Precision start = 64;
    Precision max = 1024;
};

struct NumericOptions {
    PrecisionPolicy precision;
    /// When set, candidates are decided by the registry.
    std::optional<PfaffFamily> registry;
    int jobs = 1;
};

/// Interval census over x of height <= H in [lo, hi]: each enclosure of f(x)
/// of width < 1/(2H^2) holds at most one height-<=H rational.
CensusRecord census_pfaff_numeric(const PfaffianFunction& f, const Rational& lo, const Rational& hi,
                                  const Integer& H, const NumericOptions& options = {});

/// Detects a registry family behind a Pfaffian function (P = y_j on a
/// built-in chain).
std::optional<PfaffFamily> registry_match(const PfaffianFunction& f);

} // namespace pfaffcount
