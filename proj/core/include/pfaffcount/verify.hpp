#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pfaffcount/census.hpp"
#include "pfaffcount/cover.hpp"
#include "pfaffcount/interval.hpp"
#include "pfaffcount/monomial.hpp"
#include "pfaffcount/pfaffian.hpp"
#include "pfaffcount/roots.hpp"

namespace pfaffcount {

enum class CurveKind { algebraic, pfaff_exact, pfaff_numeric };
std::string to_string(CurveKind k);

/// Declares that the counted points of an algebraic curve form one graph of
/// slope at most one over `axis`, of length `length` in that coordinate.
struct GraphHint {
    char axis = 'x';
    std::string length_text;
    Interval length;
};

struct CurveSpec {
    std::string id;
    CurveKind kind = CurveKind::algebraic;
    XDomain domain;

    // algebraic
    std::optional<PlaneCurve> curve;
    std::vector<PlaneCurve> where;
    /// Recorded, never verified.
    bool irreducible_asserted = false;
    std::optional<GraphHint> graph;

    // pfaff-exact
    std::optional<PfaffFamily> family;

    // pfaff-numeric
    std::optional<PfaffianFunction> function;
};

struct PieceCover {
    std::string label;
    char axis = 'x';
    /// Piece ends in x (outer ends of the boundary enclosures).
    Rational lo;
    Rational hi;
    /// Length in the graph coordinate after clipping to [-H, H], at least 1/H^2.
    Interval L;
    /// Pieces of constant sign of f' and f'' inside this piece.
    std::size_t convexity_pieces = 0;
    /// Points in graph coordinates (swapped for pieces over y), sorted.
    std::vector<RationalPoint> points;
    CoverReport report;
    bool sound = false;
    bool within_bound = false;
};

struct Flag {
    std::string name;
    bool pass = false;
};

struct HeightReport {
    CensusRecord census;
    std::vector<PieceCover> covers;
    std::vector<Flag> flags;
    bool pass = false;
};

struct VerificationBundle {
    std::string curve_id;
    CurveKind kind = CurveKind::algebraic;
    std::string M_label;
    std::vector<HeightReport> heights;
    bool pass = false;
};

struct VerifyOptions {
    /// Strictly increasing H schedule.
    std::vector<Integer> H;
    MonomialSet M = total_degree_set(1);
    std::string M_label = "total-degree 1";
    int jobs = 1;
    PrecisionPolicy precision;
};

/// Census plus bound and cover checks for every H of the schedule.
CensusRecord run_census(const CurveSpec& spec, const Integer& H, int jobs = 1,
                        const PrecisionPolicy& precision = {});
VerificationBundle run_verification(const CurveSpec& spec, const VerifyOptions& options);

/// The Pfaffian function behind a pfaff spec.
PfaffianFunction spec_function(const CurveSpec& spec);

/// Parses "p/q" or "sqrt(p/q)" into an enclosure.
Interval parse_length(const std::string& text, Precision prec = 192);

} // namespace pfaffcount
