#include "pfaffcount/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pfaffcount/errors.hpp"

namespace pfaffcount::io {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& field, const std::string& what)
{
    throw FormatError("field '" + field + "': " + what);
}

json parse_json(std::string_view text)
{
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }
}

const json& need(const json& obj, const std::string& key, const std::string& path)
{
    if (!obj.is_object()) {
        bad(path, "expected an object");
    }
    const auto it = obj.find(key);
    if (it == obj.end()) {
        bad(path.empty() ? key : path + "." + key, "missing");
    }
    return *it;
}

const json* find(const json& obj, const std::string& key)
{
    const auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
}

void only_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& path)
{
    for (const auto& [k, v] : obj.items()) {
        if (std::none_of(keys.begin(), keys.end(), [&](const char* allowed) { return k == allowed; })) {
            bad(path.empty() ? k : path + "." + k, "unknown field");
        }
    }
}

int get_int(const json& v, const std::string& path)
{
    if (!v.is_number_integer()) {
        bad(path, "expected an integer");
    }
    return v.get<int>();
}

std::string get_string(const json& v, const std::string& path)
{
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number_integer()) {
        return std::to_string(v.get<long long>());
    }
    bad(path, "expected a string");
}

Rational get_rational(const json& v, const std::string& path)
{
    try {
        return parse_rational(get_string(v, path));
    } catch (const FormatError& e) {
        bad(path, e.what());
    }
}

std::optional<Rational> get_endpoint(const json& v, const std::string& path)
{
    if (v.is_null()) {
        return std::nullopt;
    }
    return get_rational(v, path);
}

std::string indexed(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

// ---------------------------------------------------------------------------
// Constants and polynomials

json constant_json(const Constant& c)
{
    if (c.is_rational()) {
        return format_rational(c.rational_value());
    }
    if (c.terms().size() == 1) {
        const auto& [mono, coeff] = *c.terms().begin();
        if (mono.size() == 1 && mono.front().second == 1) {
            return json{{"const", mono.front().first}, {"times", format_rational(coeff)}};
        }
    }
    json terms = json::array();
    for (const auto& [mono, coeff] : c.terms()) {
        json symbols = json::array();
        for (const auto& [name, power] : mono) {
            symbols.push_back(json::array({name, power}));
        }
        terms.push_back(json{{"symbols", symbols}, {"times", format_rational(coeff)}});
    }
    return json{{"terms", terms}};
}

Constant symbol_or_bad(const std::string& name, int power, const std::string& path)
{
    try {
        return Constant::symbol(name, power);
    } catch (const FormatError& e) {
        bad(path, e.what());
    }
}

Constant parse_constant(const json& v, const std::string& path)
{
    if (!v.is_object()) {
        return Constant(get_rational(v, path));
    }
    if (v.contains("const")) {
        only_keys(v, {"const", "times"}, path);
        const Rational times = v.contains("times") ? get_rational(v["times"], path + ".times") : Rational(1);
        return symbol_or_bad(get_string(v["const"], path + ".const"), 1, path + ".const") * Constant(times);
    }
    only_keys(v, {"terms"}, path);
    const json& terms = need(v, "terms", path);
    if (!terms.is_array()) {
        bad(path + ".terms", "expected an array");
    }
    Constant out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string tp = indexed(path + ".terms", i);
        Constant term(get_rational(need(terms[i], "times", tp), tp + ".times"));
        const json& symbols = need(terms[i], "symbols", tp);
        for (std::size_t j = 0; j < symbols.size(); ++j) {
            const std::string sp = indexed(tp + ".symbols", j);
            if (!symbols[j].is_array() || symbols[j].size() != 2) {
                bad(sp, "expected [name, power]");
            }
            term *= symbol_or_bad(get_string(symbols[j][0], sp), get_int(symbols[j][1], sp), sp);
        }
        out += term;
    }
    return out;
}

json polynomial_json(const PfaffPolynomial& p)
{
    json out = json::array();
    for (const auto& [exps, c] : p.terms()) {
        out.push_back(json{{"exponents", exps}, {"coeff", constant_json(c)}});
    }
    return out;
}

PfaffPolynomial parse_polynomial(const json& v, int variables, const std::string& path)
{
    if (!v.is_array()) {
        bad(path, "expected a list of terms");
    }
    PfaffPolynomial p(variables);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string tp = indexed(path, i);
        only_keys(v[i], {"exponents", "coeff"}, tp);
        const json& e = need(v[i], "exponents", tp);
        if (!e.is_array() || static_cast<int>(e.size()) != variables) {
            bad(tp + ".exponents", "expected " + std::to_string(variables) + " exponents");
        }
        PfaffPolynomial::Exponents exps;
        for (std::size_t j = 0; j < e.size(); ++j) {
            const int x = get_int(e[j], indexed(tp + ".exponents", j));
            if (x < 0) {
                bad(indexed(tp + ".exponents", j), "negative exponent");
            }
            exps.push_back(x);
        }
        p.add_term(exps, parse_constant(need(v[i], "coeff", tp), tp + ".coeff"));
    }
    return p;
}

json rational_list(const std::vector<Rational>& v)
{
    json out = json::array();
    for (const auto& q : v) {
        out.push_back(format_rational(q));
    }
    return out;
}

std::vector<Rational> parse_rational_list(const json& v, const std::string& path)
{
    if (!v.is_array()) {
        bad(path, "expected a list");
    }
    std::vector<Rational> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(get_rational(v[i], indexed(path, i)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Plane curves

json plane_curve_to_json(const PlaneCurve& c)
{
    json support = json::array();
    json coeffs = json::array();
    for (std::size_t i = 0; i < c.support().size(); ++i) {
        const auto& e = c.support().exponents()[i];
        support.push_back(json::array({e.h, e.k}));
        coeffs.push_back(json::array({format_rational(c.coefficients()[i])}));
    }
    return json{{"support", support}, {"coeffs", coeffs}};
}

PlaneCurve plane_curve_from_json(const json& v, const std::string& path)
{
    only_keys(v, {"support", "coeffs"}, path);
    const json& support = need(v, "support", path);
    const json& coeffs = need(v, "coeffs", path);
    const std::string sp = path.empty() ? "support" : path + ".support";
    const std::string cp = path.empty() ? "coeffs" : path + ".coeffs";
    if (!support.is_array() || support.empty()) {
        bad(sp, "expected a nonempty list of [h, k]");
    }
    if (!coeffs.is_array()) {
        bad(cp, "expected a list");
    }
    if (coeffs.size() != support.size()) {
        bad(cp, std::to_string(coeffs.size()) + " coefficients for " + std::to_string(support.size()) +
                    " support monomials (coefficients outside the support)");
    }
    std::vector<Exponent> exps;
    for (std::size_t i = 0; i < support.size(); ++i) {
        const json& e = support[i];
        if (!e.is_array() || e.size() != 2) {
            bad(indexed(sp, i), "expected [h, k]");
        }
        exps.push_back(Exponent{get_int(e[0], indexed(sp, i)), get_int(e[1], indexed(sp, i))});
    }
    std::optional<MonomialSet> set;
    try {
        set.emplace(exps);
    } catch (const PreconditionError& e) {
        bad(sp, e.what());
    }
    std::vector<Rational> aligned(exps.size(), Rational(0));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const json& c = coeffs[i];
        const json& value = c.is_array() && c.size() == 1 ? c[0] : c;
        aligned[set->index_of(exps[i])] = get_rational(value, indexed(cp, i));
    }
    return PlaneCurve(*set, std::move(aligned));
}

// ---------------------------------------------------------------------------
// Pfaffian functions

json domain_json(const OpenInterval& d)
{
    return json::array({d.lo ? json(format_rational(*d.lo)) : json(nullptr),
                        d.hi ? json(format_rational(*d.hi)) : json(nullptr)});
}

OpenInterval parse_open_domain(const json& v, const std::string& path)
{
    if (!v.is_array() || v.size() != 2) {
        bad(path, "expected [lo, hi] with null for an infinite end");
    }
    return OpenInterval{get_endpoint(v[0], indexed(path, 0)), get_endpoint(v[1], indexed(path, 1))};
}

json function_to_json(const PfaffianFunction& f)
{
    const PfaffianChain& chain = f.chain();
    json g = json::array();
    for (const auto& gj : chain.g()) {
        g.push_back(polynomial_json(gj));
    }
    json out{{"r", chain.order()}, {"alpha", chain.alpha()}, {"evaluator", chain.evaluator().name()}};
    json params = json::object();
    for (const auto& [k, v] : chain.evaluator().parameters()) {
        params[k] = v;
    }
    out["params"] = params;
    if (const auto fs = chains::rational_functions(chain)) {
        json functions = json::array();
        for (const auto& rf : *fs) {
            functions.push_back(json{{"num", rational_list(rf.num)}, {"den", rational_list(rf.den)}});
        }
        out["functions"] = functions;
    }
    out["g"] = g;
    out["P"] = polynomial_json(f.polynomial());
    out["beta"] = f.beta();
    out["domain"] = domain_json(chain.domain());
    return out;
}

PfaffianFunction function_from_json(const json& v, const std::string& path)
{
    const std::string prefix = path.empty() ? "" : path + ".";
    only_keys(v, {"r", "alpha", "evaluator", "params", "functions", "g", "P", "beta", "domain"}, path);
    const std::string evaluator = get_string(need(v, "evaluator", path), prefix + "evaluator");
    std::map<std::string, std::string> params;
    if (const json* p = find(v, "params")) {
        if (!p->is_object()) {
            bad(prefix + "params", "expected an object");
        }
        for (const auto& [k, val] : p->items()) {
            params[k] = get_string(val, prefix + "params." + k);
        }
    }
    std::shared_ptr<const PfaffianChain> chain;
    if (evaluator == "rational") {
        const int r = get_int(need(v, "r", path), prefix + "r");
        const int alpha = get_int(need(v, "alpha", path), prefix + "alpha");
        const json& functions = need(v, "functions", path);
        if (!functions.is_array() || static_cast<int>(functions.size()) != r) {
            bad(prefix + "functions", "expected r entries");
        }
        std::vector<chains::RationalFunction> fs;
        for (std::size_t i = 0; i < functions.size(); ++i) {
            const std::string fp = indexed(prefix + "functions", i);
            fs.push_back({parse_rational_list(need(functions[i], "num", fp), fp + ".num"),
                          parse_rational_list(need(functions[i], "den", fp), fp + ".den")});
        }
        const json& gj = need(v, "g", path);
        if (!gj.is_array() || static_cast<int>(gj.size()) != r) {
            bad(prefix + "g", "expected r polynomials");
        }
        std::vector<PfaffPolynomial> g;
        for (std::size_t i = 0; i < gj.size(); ++i) {
            g.push_back(parse_polynomial(gj[i], r + 1, indexed(prefix + "g", i)));
        }
        const OpenInterval domain =
            find(v, "domain") ? parse_open_domain(v["domain"], prefix + "domain") : OpenInterval{};
        try {
            chain = chains::rational(std::move(fs), std::move(g), alpha, domain);
        } catch (const PreconditionError& e) {
            bad(prefix + "g", e.what());
        }
    } else {
        try {
            chain = chains::by_name(evaluator, params);
        } catch (const FormatError& e) {
            bad(prefix + "evaluator", e.what());
        } catch (const PreconditionError& e) {
            bad(prefix + "params", e.what());
        }
        if (const json* r = find(v, "r"); r && get_int(*r, prefix + "r") != chain->order()) {
            bad(prefix + "r", "does not match evaluator '" + evaluator + "'");
        }
        if (const json* a = find(v, "alpha"); a && get_int(*a, prefix + "alpha") != chain->alpha()) {
            bad(prefix + "alpha", "does not match evaluator '" + evaluator + "'");
        }
        if (const json* gj = find(v, "g")) {
            if (!gj->is_array() || static_cast<int>(gj->size()) != chain->order()) {
                bad(prefix + "g", "expected r polynomials");
            }
            for (std::size_t i = 0; i < gj->size(); ++i) {
                const auto gi = parse_polynomial((*gj)[i], chain->order() + 1, indexed(prefix + "g", i));
                if (!(gi == chain->g()[i])) {
                    bad(indexed(prefix + "g", i), "does not match evaluator '" + evaluator + "'");
                }
            }
        }
        if (const json* d = find(v, "domain")) {
            try {
                chain = std::make_shared<const PfaffianChain>(
                    chain->with_domain(parse_open_domain(*d, prefix + "domain")));
            } catch (const PreconditionError& e) {
                bad(prefix + "domain", e.what());
            }
        }
    }
    PfaffPolynomial P = parse_polynomial(need(v, "P", path), chain->order() + 1, prefix + "P");
    const int beta = find(v, "beta") ? get_int(v["beta"], prefix + "beta") : std::max(1, P.degree());
    try {
        return PfaffianFunction(chain, std::move(P), beta);
    } catch (const PreconditionError& e) {
        bad(prefix + "P", e.what());
    }
}

// ---------------------------------------------------------------------------
// Reports

std::string upper(const Interval& v) { return v.upper_decimal(10); }

json points_json(const std::vector<RationalPoint>& pts)
{
    json out = json::array();
    for (const auto& p : pts) {
        out.push_back(format_point(p));
    }
    return out;
}

json monomials_json(const MonomialSet& M)
{
    json out = json::array();
    for (const auto& e : M.exponents()) {
        out.push_back(json::array({e.h, e.k}));
    }
    return out;
}

json cover_to_json(const CoverReport& report, const std::vector<RationalPoint>& points, bool inline_points)
{
    json blocks = json::array();
    for (const auto& b : report.blocks) {
        json pts = json::array();
        for (auto idx : b.points) {
            if (inline_points) {
                pts.push_back(format_point(points.at(idx)));
            } else {
                pts.push_back(idx);
            }
        }
        blocks.push_back(json{{"points", pts}, {"curve", plane_curve_to_json(b.curve)}});
    }
    return json{{"M", monomials_json(report.M)},
                {"H", report.H.get_str()},
                {"bound", report.bound ? json(upper(*report.bound)) : json(nullptr)},
                {"blocks", blocks}};
}

std::string ratio_text(std::int64_t n, const Interval& bound)
{
    const double b = bound.hi_double();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", b > 0 ? static_cast<double>(n) / b : 0.0);
    return buf;
}

} // namespace

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw PreconditionError("cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw PreconditionError("cannot write '" + path.string() + "'");
    }
    out << text;
}

PlaneCurve parse_plane_curve(std::string_view json_text)
{
    return plane_curve_from_json(parse_json(json_text), "");
}

std::string plane_curve_json(const PlaneCurve& curve) { return plane_curve_to_json(curve).dump(); }

PfaffianFunction parse_function(std::string_view json_text)
{
    return function_from_json(parse_json(json_text), "");
}

std::string function_json(const PfaffianFunction& f) { return function_to_json(f).dump(2); }

CurveSpec parse_curve_spec(std::string_view json_text)
{
    const json v = parse_json(json_text);
    if (!v.is_object()) {
        bad("", "curve spec must be an object");
    }
    CurveSpec spec;
    spec.id = get_string(need(v, "id", ""), "id");
    const std::string kind = get_string(need(v, "kind", ""), "kind");
    if (const json* d = find(v, "domain")) {
        if (!d->is_array() || d->size() != 2) {
            bad("domain", "expected [lo, hi] with null for an open end");
        }
        spec.domain.lo = get_endpoint((*d)[0], "domain[0]");
        spec.domain.hi = get_endpoint((*d)[1], "domain[1]");
    }
    if (kind == "algebraic") {
        only_keys(v, {"id", "kind", "curve", "domain", "where", "graph", "irreducible"}, "");
        spec.kind = CurveKind::algebraic;
        spec.curve = plane_curve_from_json(need(v, "curve", ""), "curve");
        if (const json* w = find(v, "where")) {
            if (!w->is_array()) {
                bad("where", "expected a list of curves");
            }
            for (std::size_t i = 0; i < w->size(); ++i) {
                spec.where.push_back(plane_curve_from_json((*w)[i], indexed("where", i)));
            }
        }
        if (const json* g = find(v, "graph")) {
            only_keys(*g, {"axis", "length"}, "graph");
            GraphHint hint;
            const std::string axis = get_string(need(*g, "axis", "graph"), "graph.axis");
            if (axis != "x" && axis != "y") {
                bad("graph.axis", "expected \"x\" or \"y\"");
            }
            hint.axis = axis.front();
            hint.length_text = get_string(need(*g, "length", "graph"), "graph.length");
            try {
                hint.length = parse_length(hint.length_text);
            } catch (const FormatError& e) {
                bad("graph.length", e.what());
            }
            spec.graph = std::move(hint);
        }
        if (const json* irr = find(v, "irreducible")) {
            if (!irr->is_boolean()) {
                bad("irreducible", "expected a boolean");
            }
            spec.irreducible_asserted = irr->get<bool>();
        }
    } else if (kind == "pfaff-exact") {
        only_keys(v, {"id", "kind", "family", "params", "domain"}, "");
        spec.kind = CurveKind::pfaff_exact;
        PfaffFamily family;
        family.name = get_string(need(v, "family", ""), "family");
        if (const json* p = find(v, "params")) {
            if (!p->is_object()) {
                bad("params", "expected an object");
            }
            for (const auto& [k, val] : p->items()) {
                family.params[k] = get_string(val, "params." + k);
            }
        }
        try {
            (void)family_fact(family);
            (void)family_function(family);
        } catch (const PreconditionError& e) {
            bad("family", e.what());
        } catch (const FormatError& e) {
            bad("params", e.what());
        }
        spec.family = std::move(family);
    } else if (kind == "pfaff-numeric") {
        only_keys(v, {"id", "kind", "function", "domain"}, "");
        spec.kind = CurveKind::pfaff_numeric;
        spec.function = function_from_json(need(v, "function", ""), "function");
    } else {
        bad("kind", "expected algebraic, pfaff-exact or pfaff-numeric, got '" + kind + "'");
    }
    return spec;
}

CurveSpec load_curve_spec(const std::filesystem::path& path) { return parse_curve_spec(read_file(path)); }

std::string cover_json(const CoverReport& report, const std::vector<RationalPoint>& points)
{
    return cover_to_json(report, points, true).dump(2);
}

std::string census_csv_header(bool timing)
{
    return timing ? "curve_id,H,N,status,seconds" : "curve_id,H,N,status";
}

std::string census_csv_row(const CensusRecord& r, bool timing)
{
    std::string row = r.curve_id + "," + r.H.get_str() + "," + std::to_string(r.N) + "," + to_string(r.status);
    if (timing) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", r.seconds);
        row += ",";
        row += buf;
    }
    return row;
}

std::string bundle_json(const VerificationBundle& bundle)
{
    json heights = json::array();
    for (const auto& h : bundle.heights) {
        const CensusRecord& c = h.census;
        json bounds = json::array();
        for (const auto& b : c.bounds) {
            bounds.push_back(json{{"name", b.name}, {"upper", upper(b.value)}});
        }
        json covers = json::array();
        for (const auto& pc : h.covers) {
            covers.push_back(json{{"label", pc.label},
                                  {"axis", std::string(1, pc.axis)},
                                  {"lo", format_rational(pc.lo)},
                                  {"hi", format_rational(pc.hi)},
                                  {"L", upper(pc.L)},
                                  {"convexity_pieces", pc.convexity_pieces},
                                  {"points", points_json(pc.points)},
                                  {"cover_size", pc.report.blocks.size()},
                                  {"cover", cover_to_json(pc.report, pc.points, false)},
                                  {"sound", pc.sound},
                                  {"within_bound", pc.within_bound}});
        }
        json flags = json::array();
        for (const auto& f : h.flags) {
            flags.push_back(json{{"name", f.name}, {"pass", f.pass}});
        }
        json vertical = json::array();
        for (const auto& x : c.vertical) {
            vertical.push_back(format_rational(x));
        }
        json exhausted = json::array();
        for (const auto& x : c.exhausted) {
            exhausted.push_back(format_rational(x));
        }
        heights.push_back(json{{"H", c.H.get_str()},
                               {"N", c.N},
                               {"status", to_string(c.status)},
                               {"points", points_json(c.points)},
                               {"candidates", points_json(c.candidates)},
                               {"precision_exhausted", exhausted},
                               {"vertical", vertical},
                               {"bounds", bounds},
                               {"covers", covers},
                               {"flags", flags},
                               {"pass", h.pass}});
    }
    const json out{{"curve_id", bundle.curve_id},
                   {"kind", to_string(bundle.kind)},
                   {"M", bundle.M_label},
                   {"heights", heights},
                   {"pass", bundle.pass}};
    return out.dump(2) + "\n";
}

std::string bounds_csv(const VerificationBundle& bundle)
{
    std::string out = "curve_id,H,N_empirical,bound_name,bound_value,ratio\n";
    for (const auto& h : bundle.heights) {
        for (const auto& b : h.census.bounds) {
            out += bundle.curve_id + "," + h.census.H.get_str() + "," + std::to_string(h.census.N) + "," + b.name +
                   "," + upper(b.value) + "," + ratio_text(h.census.N, b.value) + "\n";
        }
    }
    return out;
}

std::string plot_csv(const VerificationBundle& bundle)
{
    std::string out = "curve_id,H,N,bound_name,bound\n";
    for (const auto& h : bundle.heights) {
        for (const auto& b : h.census.bounds) {
            out += bundle.curve_id + "," + h.census.H.get_str() + "," + std::to_string(h.census.N) + "," + b.name +
                   "," + upper(b.value) + "\n";
        }
    }
    return out;
}

} // namespace pfaffcount::io
