#include "pfaffcount/verify.hpp"

#include <algorithm>

#include "pfaffcount/bounds.hpp"
#include "pfaffcount/errors.hpp"

namespace pfaffcount {

std::string to_string(CurveKind k)
{
    switch (k) {
    case CurveKind::algebraic:
        return "algebraic";
    case CurveKind::pfaff_exact:
        return "pfaff-exact";
    case CurveKind::pfaff_numeric:
        return "pfaff-numeric";
    }
    return "unknown";
}

Interval parse_length(const std::string& text, Precision prec)
{
    const std::string prefix = "sqrt(";
    if (text.rfind(prefix, 0) == 0 && text.size() > prefix.size() + 1 && text.back() == ')') {
        const Rational q = parse_rational(text.substr(prefix.size(), text.size() - prefix.size() - 1));
        if (q < 0) {
            throw FormatError("length '" + text + "' is the root of a negative number");
        }
        return sqrt(Interval(q, prec));
    }
    return Interval(parse_rational(text), prec);
}

PfaffianFunction spec_function(const CurveSpec& spec)
{
    if (spec.kind == CurveKind::pfaff_exact && spec.family) {
        return family_function(*spec.family);
    }
    if (spec.kind == CurveKind::pfaff_numeric && spec.function) {
        return *spec.function;
    }
    throw PreconditionError("curve '" + spec.id + "' has no Pfaffian function");
}

CensusRecord run_census(const CurveSpec& spec, const Integer& H, int jobs, const PrecisionPolicy& precision)
{
    CensusRecord rec;
    switch (spec.kind) {
    case CurveKind::algebraic: {
        if (!spec.curve) {
            throw PreconditionError("algebraic curve '" + spec.id + "' has no polynomial");
        }
        AlgebraicOptions options;
        options.domain = spec.domain;
        options.where = spec.where;
        options.jobs = jobs;
        rec = census_algebraic(*spec.curve, H, options);
        break;
    }
    case CurveKind::pfaff_exact:
        if (!spec.family) {
            throw PreconditionError("pfaff-exact curve '" + spec.id + "' has no family");
        }
        rec = census_pfaff_exact(*spec.family, H, spec.domain);
        break;
    case CurveKind::pfaff_numeric: {
        const PfaffianFunction f = spec_function(spec);
        NumericOptions options;
        options.precision = precision;
        options.registry = registry_match(f);
        options.jobs = jobs;
        const Rational lo = spec.domain.lo.value_or(Rational(-H));
        const Rational hi = spec.domain.hi.value_or(Rational(H));
        rec = census_pfaff_numeric(f, lo, hi, H, options);
        break;
    }
    }
    rec.curve_id = spec.id;
    return rec;
}

namespace {

constexpr Precision kPrec = 192;

bool at_most(std::int64_t n, const Interval& bound)
{
    return Interval(static_cast<long>(n), 64).certainly_le(bound);
}

// Innermost census abscissa beyond an open end: any x of height <= H with
// x > e satisfies x - e >= 1 / (H den(e)).
Rational inside(const Rational& e, const Integer& H, int direction)
{
    return e + Rational(direction) / Rational(H * e.get_den());
}

std::size_t convexity_pieces(const PfaffianFunction& f, const Rational& lo, const Rational& hi)
{
    if (lo >= hi) {
        return 1;
    }
    try {
        return sign_partition(f, lo, hi, 2).size();
    } catch (const PreconditionError&) {
        return 1;
    }
}

Interval y_length(const PfaffianFunction& f, const Rational& lo, const Rational& hi, const Integer& H)
{
    const Interval a = f.enclose(Interval(lo, kPrec), kPrec);
    const Interval b = f.enclose(Interval(hi, kPrec), kPrec);
    const Rational h(H);
    const Rational top = std::min(h, std::max(a.hi_rational(), b.hi_rational()));
    const Rational bottom = std::max(Rational(-h), std::min(a.lo_rational(), b.lo_rational()));
    const Rational len = top - bottom;
    return Interval(len > 0 ? len : Rational(0), kPrec);
}

Interval at_least_inverse_square(const Interval& L, const Integer& H)
{
    const Interval floor_value(Rational(1) / Rational(H * H), kPrec);
    return L.certainly_lt(floor_value) ? floor_value : L;
}

PieceCover make_cover(std::string label, char axis, Rational lo, Rational hi, Interval L,
                      std::vector<RationalPoint> points, const MonomialSet& M, const Integer& H)
{
    std::sort(points.begin(), points.end());
    CoverVerification v = verify_cover(points, M, L, H);
    PieceCover pc{std::move(label), axis, std::move(lo), std::move(hi), std::move(L), 0, std::move(points),
                  std::move(v.report), false, false};
    pc.sound = cover_is_sound(pc.report, pc.points);
    pc.within_bound = Interval(static_cast<long>(pc.report.blocks.size()), 64).certainly_le(*pc.report.bound);
    return pc;
}

std::vector<PieceCover> pfaff_covers(const PfaffianFunction& f, const CurveSpec& spec, const CensusRecord& rec,
                                     const VerifyOptions& options)
{
    const Integer& H = rec.H;
    Rational a(-H);
    Rational b(H);
    const auto& dom = f.chain().domain();
    if (dom.lo) {
        a = std::max(a, inside(*dom.lo, H, 1));
    }
    if (dom.hi) {
        b = std::min(b, inside(*dom.hi, H, -1));
    }
    if (spec.domain.lo) {
        a = std::max(a, *spec.domain.lo);
    }
    if (spec.domain.hi) {
        b = std::min(b, *spec.domain.hi);
    }
    std::vector<PieceCover> out;
    if (a >= b) {
        return out;
    }
    const auto pieces = slope_trichotomy(f, a, b);
    std::vector<std::vector<RationalPoint>> assigned(pieces.size());
    std::size_t i = 0;
    for (const auto& p : rec.points) {
        while (i + 1 < pieces.size() && p.x > pieces[i].right.hi) {
            ++i;
        }
        assigned[i].push_back(p);
    }
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        const auto& piece = pieces[k];
        const Rational lo = piece.left.lo;
        const Rational hi = piece.right.hi;
        const bool flat = piece.label == SlopeLabel::middle;
        Interval L = flat ? Interval(hi - lo, kPrec) : y_length(f, lo, hi, H);
        L = at_least_inverse_square(L, H);
        std::vector<RationalPoint> pts = std::move(assigned[k]);
        if (!flat) {
            for (auto& p : pts) {
                std::swap(p.x, p.y);
            }
        }
        PieceCover pc = make_cover(to_string(piece.label), flat ? 'x' : 'y', lo, hi, std::move(L), std::move(pts),
                                   options.M, H);
        pc.convexity_pieces = convexity_pieces(f, lo, hi);
        out.push_back(std::move(pc));
    }
    return out;
}

std::vector<PieceCover> algebraic_covers(const CurveSpec& spec, const CensusRecord& rec, const VerifyOptions& options)
{
    std::vector<PieceCover> out;
    if (!spec.graph) {
        return out;
    }
    std::vector<RationalPoint> pts = rec.points;
    if (spec.graph->axis == 'y') {
        for (auto& p : pts) {
            std::swap(p.x, p.y);
        }
    }
    const Rational lo = rec.points.empty() ? Rational(0) : rec.points.front().x;
    const Rational hi = rec.points.empty() ? Rational(0) : rec.points.back().x;
    out.push_back(make_cover("graph", spec.graph->axis, lo, hi, at_least_inverse_square(spec.graph->length, rec.H),
                             std::move(pts), options.M, rec.H));
    return out;
}

void add_bound(HeightReport& hr, std::string name, Interval value)
{
    hr.flags.push_back(Flag{"N<=" + name, at_most(hr.census.N, value)});
    hr.census.bounds.push_back(NamedBound{std::move(name), std::move(value)});
}

} // namespace

VerificationBundle run_verification(const CurveSpec& spec, const VerifyOptions& options)
{
    if (options.H.empty()) {
        throw PreconditionError("verify: H schedule must be nonempty");
    }
    for (std::size_t i = 0; i < options.H.size(); ++i) {
        if (options.H[i] < 1 || (i > 0 && options.H[i] <= options.H[i - 1])) {
            throw PreconditionError("verify: H schedule must be positive and strictly increasing");
        }
    }
    VerificationBundle bundle;
    bundle.curve_id = spec.id;
    bundle.kind = spec.kind;
    bundle.M_label = options.M_label;
    bundle.pass = true;
    for (const auto& H : options.H) {
        HeightReport hr;
        hr.census = run_census(spec, H, options.jobs, options.precision);
        if (spec.kind == CurveKind::algebraic) {
            const auto [b, c] = spec.curve->trimmed().bidegree();
            const int bb = std::max(b, 2);
            const int cc = std::max(c, 2);
            if (H >= 3) {
                const std::string tag = "(" + std::to_string(bb) + "," + std::to_string(cc) + ")";
                add_bound(hr, "thm14" + tag, thm14_bound(bb, cc, H));
                add_bound(hr, "thm14_pipeline" + tag, thm14_pipeline(bb, cc, H).value);
            }
            hr.covers = algebraic_covers(spec, hr.census, options);
        } else {
            const PfaffianFunction f = spec_function(spec);
            if (H >= 3) {
                const Thm13Report rep = thm13_best(f.order(), f.alpha(), f.beta(), H);
                add_bound(hr, "thm13_simple", rep.simple_value());
                add_bound(hr, "thm13_pipeline(d=" + std::to_string(rep.d) + ")", rep.pipeline_value());
            }
            hr.covers = pfaff_covers(f, spec, hr.census, options);
        }
        for (std::size_t k = 0; k < hr.covers.size(); ++k) {
            const std::string tag = "piece" + std::to_string(k) + ":";
            hr.flags.push_back(Flag{tag + "cover_sound", hr.covers[k].sound});
            hr.flags.push_back(Flag{tag + "cover<=lemma21", hr.covers[k].within_bound});
        }
        hr.pass = std::all_of(hr.flags.begin(), hr.flags.end(), [](const Flag& f) { return f.pass; });
        bundle.pass = bundle.pass && hr.pass;
        bundle.heights.push_back(std::move(hr));
    }
    return bundle;
}

} // namespace pfaffcount
