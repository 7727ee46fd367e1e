#include <algorithm>
#include <map>

#include "pfaffcount/errors.hpp"
#include "pfaffcount/pfaffian.hpp"

namespace pfaffcount {

namespace {

using Exps = PfaffPolynomial::Exponents;

PfaffPolynomial term(int variables, Exps e, const Constant& c)
{
    PfaffPolynomial p(variables);
    p.add_term(e, c);
    return p;
}

Interval reciprocal(const Interval& x, Precision prec)
{
    return Interval(1L, prec) / x;
}

class ExpEvaluator final : public ChainEvaluator {
public:
    explicit ExpEvaluator(Rational rate) : rate_(std::move(rate)) {}
    std::vector<Interval> enclose(const Interval& x, Precision prec) const override
    {
        std::vector<Interval> out;
        if (rate_ == 1) {
            out.push_back(exp(x));
        } else {
            out.push_back(exp(Interval(rate_, prec) * x));
        }
        return out;
    }
    std::string name() const override { return "exp"; }
    std::map<std::string, std::string> parameters() const override
    {
        if (rate_ == 1) {
            return {};
        }
        return {{"rate", format_rational(rate_)}};
    }

private:
    Rational rate_;
};

class Exp2Evaluator final : public ChainEvaluator {
public:
    std::vector<Interval> enclose(const Interval& x, Precision) const override
    {
        std::vector<Interval> out;
        out.push_back(exp2(x));
        return out;
    }
    std::string name() const override { return "exp2"; }
};

class ExpqEvaluator final : public ChainEvaluator {
public:
    explicit ExpqEvaluator(Rational base) : base_(std::move(base)) {}
    std::vector<Interval> enclose(const Interval& x, Precision prec) const override
    {
        std::vector<Interval> out;
        if (x.is_point()) {
            const Rational xr = x.lo_rational();
            if (xr.get_den() == 1 && abs(xr.get_num()) <= 4096) {
                // Integer exponent: exact power.
                Rational p = 1;
                const long n = xr.get_num().get_si();
                for (long i = 0; i < (n < 0 ? -n : n); ++i) {
                    p *= base_;
                }
                if (n < 0) {
                    p = 1 / p;
                }
                out.emplace_back(p, prec);
                return out;
            }
        }
        out.push_back(exp(log(Interval(base_, prec)) * x));
        return out;
    }
    std::string name() const override { return "expq"; }
    std::map<std::string, std::string> parameters() const override { return {{"base", format_rational(base_)}}; }

private:
    Rational base_;
};

class LogEvaluator final : public ChainEvaluator {
public:
    std::vector<Interval> enclose(const Interval& x, Precision prec) const override
    {
        std::vector<Interval> out;
        out.push_back(reciprocal(x, prec));
        out.push_back(log(x));
        return out;
    }
    std::string name() const override { return "log"; }
};

class PowerEvaluator final : public ChainEvaluator {
public:
    explicit PowerEvaluator(Rational exponent) : exponent_(std::move(exponent)) {}
    std::vector<Interval> enclose(const Interval& x, Precision prec) const override
    {
        if (!x.is_positive()) {
            throw PrecisionExhausted("power chain evaluated outside (0, inf)");
        }
        std::vector<Interval> out;
        out.push_back(reciprocal(x, prec));
        out.push_back(pow(x, exponent_));
        return out;
    }
    std::string name() const override { return "power"; }
    std::map<std::string, std::string> parameters() const override
    {
        return {{"exponent", format_rational(exponent_)}};
    }

private:
    Rational exponent_;
};

class ExpExpEvaluator final : public ChainEvaluator {
public:
    std::vector<Interval> enclose(const Interval& x, Precision) const override
    {
        std::vector<Interval> out;
        out.push_back(exp(x));
        out.push_back(exp(out.front()));
        return out;
    }
    std::string name() const override { return "expexp"; }
};

Interval horner(const std::vector<Rational>& coeffs, const Interval& x, Precision prec)
{
    Interval acc(prec);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * x + Interval(*it, prec);
    }
    return acc;
}

Interval horner_range(const std::vector<Rational>& coeffs, const Interval& x, Precision prec)
{
    if (x.is_point()) {
        return horner(coeffs, x, prec);
    }
    // Sum of monomials with exact even-power handling is tighter than Horner over wide boxes.
    Interval acc(prec);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] != 0) {
            acc += Interval(coeffs[i], prec) * pow(x, static_cast<unsigned long>(i));
        }
    }
    return acc;
}

class RationalEvaluator final : public ChainEvaluator {
public:
    explicit RationalEvaluator(std::vector<chains::RationalFunction> functions) : functions_(std::move(functions)) {}
    std::vector<Interval> enclose(const Interval& x, Precision prec) const override
    {
        std::vector<Interval> out;
        for (const auto& f : functions_) {
            out.push_back(horner_range(f.num, x, prec) / horner_range(f.den, x, prec));
        }
        return out;
    }
    std::string name() const override { return "rational"; }
    const std::vector<chains::RationalFunction>& functions() const { return functions_; }

private:
    std::vector<chains::RationalFunction> functions_;
};

// Exact value and derivative of num/den at x.
std::pair<Rational, Rational> value_and_slope(const chains::RationalFunction& f, const Rational& x)
{
    auto eval = [&](const std::vector<Rational>& c) {
        Rational acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            acc = acc * x + *it;
        }
        return acc;
    };
    auto deriv = [&](const std::vector<Rational>& c) {
        std::vector<Rational> d;
        for (std::size_t i = 1; i < c.size(); ++i) {
            d.push_back(c[i] * static_cast<long>(i));
        }
        return eval(d);
    };
    const Rational n = eval(f.num);
    const Rational d = eval(f.den);
    if (d == 0) {
        throw PreconditionError("rational chain function has a pole inside its domain");
    }
    return {n / d, (deriv(f.num) * d - n * deriv(f.den)) / (d * d)};
}

std::vector<Rational> sample_points(const OpenInterval& domain)
{
    std::vector<Rational> pts;
    const Rational lo = domain.lo ? *domain.lo : Rational(-3);
    const Rational hi = domain.hi ? *domain.hi : lo + 6;
    const Rational span = hi - lo;
    for (int i = 1; i <= 5; ++i) {
        pts.push_back(lo + span * make_rational(i, 6));
    }
    return pts;
}

} // namespace

namespace chains {

std::shared_ptr<const PfaffianChain> exp(const Rational& rate)
{
    if (rate == 0) {
        throw PreconditionError("exp chain rate must be nonzero");
    }
    std::vector<PfaffPolynomial> g{term(2, {0, 1}, Constant(rate))};
    return std::make_shared<PfaffianChain>(1, std::move(g), std::make_shared<ExpEvaluator>(rate), OpenInterval{});
}

std::shared_ptr<const PfaffianChain> exp2()
{
    std::vector<PfaffPolynomial> g{term(2, {0, 1}, Constant::symbol("log2"))};
    return std::make_shared<PfaffianChain>(1, std::move(g), std::make_shared<Exp2Evaluator>(), OpenInterval{});
}

std::shared_ptr<const PfaffianChain> expq(const Rational& base)
{
    if (base <= 0 || base == 1) {
        throw PreconditionError("expq chain requires base > 0 and base != 1");
    }
    const Constant rate = base == 2 ? Constant::symbol("log2") : Constant::symbol("log(" + format_rational(base) + ")");
    std::vector<PfaffPolynomial> g{term(2, {0, 1}, rate)};
    return std::make_shared<PfaffianChain>(1, std::move(g), std::make_shared<ExpqEvaluator>(base), OpenInterval{});
}

std::shared_ptr<const PfaffianChain> log()
{
    std::vector<PfaffPolynomial> g{term(3, {0, 2, 0}, Constant(-1)), term(3, {0, 1, 0}, Constant(1))};
    return std::make_shared<PfaffianChain>(2, std::move(g), std::make_shared<LogEvaluator>(),
                                           OpenInterval{Rational(0), std::nullopt});
}

std::shared_ptr<const PfaffianChain> power(const Rational& exponent)
{
    if (exponent == 0) {
        throw PreconditionError("power chain exponent must be nonzero");
    }
    std::vector<PfaffPolynomial> g{term(3, {0, 2, 0}, Constant(-1)), term(3, {0, 1, 1}, Constant(exponent))};
    return std::make_shared<PfaffianChain>(2, std::move(g), std::make_shared<PowerEvaluator>(exponent),
                                           OpenInterval{Rational(0), std::nullopt});
}

std::shared_ptr<const PfaffianChain> expexp()
{
    std::vector<PfaffPolynomial> g{term(3, {0, 1, 0}, Constant(1)), term(3, {0, 1, 1}, Constant(1))};
    return std::make_shared<PfaffianChain>(2, std::move(g), std::make_shared<ExpExpEvaluator>(), OpenInterval{});
}

std::shared_ptr<const PfaffianChain> rational(std::vector<RationalFunction> functions, std::vector<PfaffPolynomial> g,
                                              int alpha, OpenInterval domain)
{
    if (functions.size() != g.size()) {
        throw PreconditionError("rational chain: one function per chain polynomial required");
    }
    for (const auto& f : functions) {
        if (f.den.empty() || std::all_of(f.den.begin(), f.den.end(), [](const Rational& c) { return c == 0; })) {
            throw PreconditionError("rational chain: zero denominator polynomial");
        }
    }
    auto chain = std::make_shared<PfaffianChain>(alpha, std::move(g), std::make_shared<RationalEvaluator>(functions),
                                                 std::move(domain));
    // f_j' must equal g_j(x, f_1..f_j): check enclosure containment at samples.
    const int variables = chain->order() + 1;
    for (const Rational& x : sample_points(chain->domain())) {
        std::vector<Interval> values{Interval(x, 256)};
        std::vector<Rational> slopes;
        for (const auto& f : functions) {
            auto [v, s] = value_and_slope(f, x);
            values.emplace_back(v, 256);
            slopes.push_back(s);
        }
        for (int j = 0; j < chain->order(); ++j) {
            const Interval gj = chain->g()[static_cast<std::size_t>(j)].enclose(values, 256);
            if (!gj.contains(slopes[static_cast<std::size_t>(j)])) {
                throw PreconditionError("rational chain: g_" + std::to_string(j + 1) +
                                        " is inconsistent with f_" + std::to_string(j + 1) + "' at x = " +
                                        format_rational(x));
            }
        }
        (void)variables;
    }
    return chain;
}

std::shared_ptr<const PfaffianChain> inverse_one_plus_square()
{
    std::vector<PfaffPolynomial> g{term(2, {1, 2}, Constant(-2))};
    return rational({RationalFunction{{Rational(1)}, {Rational(1), Rational(0), Rational(1)}}}, std::move(g), 3,
                    OpenInterval{});
}

std::optional<std::vector<RationalFunction>> rational_functions(const PfaffianChain& chain)
{
    if (const auto* r = dynamic_cast<const RationalEvaluator*>(&chain.evaluator())) {
        return r->functions();
    }
    return std::nullopt;
}

std::shared_ptr<const PfaffianChain> by_name(const std::string& name, const std::map<std::string, std::string>& params)
{
    auto param = [&](const std::string& key, const std::string& fallback) {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    if (name == "exp") {
        return exp(parse_rational(param("rate", "1")));
    }
    if (name == "exp2") {
        return exp2();
    }
    if (name == "expq") {
        return expq(parse_rational(param("base", "")));
    }
    if (name == "log") {
        return log();
    }
    if (name == "power") {
        return power(parse_rational(param("exponent", "")));
    }
    if (name == "expexp") {
        return expexp();
    }
    throw FormatError("unknown chain evaluator '" + name + "'");
}

} // namespace chains

} // namespace pfaffcount
