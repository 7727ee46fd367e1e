#include "pfaffcount/pfaffian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pfaffcount/errors.hpp"

namespace pfaffcount {

PfaffPolynomial::PfaffPolynomial(int variables) : variables_(variables)
{
    if (variables < 1) {
        throw PreconditionError("polynomial needs at least the variable x");
    }
}

PfaffPolynomial PfaffPolynomial::constant(int variables, const Constant& c)
{
    PfaffPolynomial p(variables);
    p.add_term(Exponents(static_cast<std::size_t>(variables), 0), c);
    return p;
}

PfaffPolynomial PfaffPolynomial::variable(int variables, int index)
{
    PfaffPolynomial p(variables);
    Exponents e(static_cast<std::size_t>(variables), 0);
    e.at(static_cast<std::size_t>(index)) = 1;
    p.add_term(e, Constant(1));
    return p;
}

void PfaffPolynomial::add_term(const Exponents& exponents, const Constant& c)
{
    if (static_cast<int>(exponents.size()) != variables_) {
        throw PreconditionError("term has " + std::to_string(exponents.size()) + " exponents, expected " +
                                std::to_string(variables_));
    }
    if (std::any_of(exponents.begin(), exponents.end(), [](int e) { return e < 0; })) {
        throw PreconditionError("negative exponent in polynomial term");
    }
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.emplace(exponents, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

int PfaffPolynomial::degree() const
{
    int d = -1;
    for (const auto& [e, c] : terms_) {
        d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    }
    return d;
}

bool PfaffPolynomial::independent_of_from(int first) const
{
    for (const auto& [e, c] : terms_) {
        for (int i = first; i < variables_; ++i) {
            if (e[static_cast<std::size_t>(i)] != 0) {
                return false;
            }
        }
    }
    return true;
}

bool PfaffPolynomial::has_rational_coefficients() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_rational(); });
}

PfaffPolynomial PfaffPolynomial::partial(int index) const
{
    PfaffPolynomial d(variables_);
    const auto i = static_cast<std::size_t>(index);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) {
            continue;
        }
        Exponents lowered = e;
        lowered[i] -= 1;
        d.add_term(lowered, c * Constant(static_cast<long>(e[i])));
    }
    return d;
}

PfaffPolynomial& PfaffPolynomial::operator+=(const PfaffPolynomial& o)
{
    if (o.variables_ != variables_) {
        throw PreconditionError("polynomial variable count mismatch");
    }
    for (const auto& [e, c] : o.terms_) {
        add_term(e, c);
    }
    return *this;
}

PfaffPolynomial& PfaffPolynomial::operator-=(const PfaffPolynomial& o)
{
    if (o.variables_ != variables_) {
        throw PreconditionError("polynomial variable count mismatch");
    }
    for (const auto& [e, c] : o.terms_) {
        add_term(e, -c);
    }
    return *this;
}

PfaffPolynomial& PfaffPolynomial::operator*=(const PfaffPolynomial& o)
{
    if (o.variables_ != variables_) {
        throw PreconditionError("polynomial variable count mismatch");
    }
    PfaffPolynomial product(variables_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            Exponents e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] = ea[i] + eb[i];
            }
            product.add_term(e, ca * cb);
        }
    }
    *this = std::move(product);
    return *this;
}

Interval PfaffPolynomial::enclose(const std::vector<Interval>& values, Precision prec) const
{
    if (static_cast<int>(values.size()) != variables_) {
        throw PreconditionError("enclose: wrong number of variable enclosures");
    }
    std::vector<int> max_power(values.size(), 0);
    for (const auto& [e, c] : terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            max_power[i] = std::max(max_power[i], e[i]);
        }
    }
    std::vector<std::vector<Interval>> powers(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        powers[i].reserve(static_cast<std::size_t>(max_power[i]) + 1);
        for (int n = 0; n <= max_power[i]; ++n) {
            powers[i].push_back(pow(values[i], static_cast<unsigned long>(n)));
        }
    }
    Interval sum(prec);
    for (const auto& [e, c] : terms_) {
        Interval term = c.is_rational() ? Interval(c.rational_value(), prec) : c.enclose(prec);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] != 0) {
                term *= powers[i][static_cast<std::size_t>(e[i])];
            }
        }
        sum += term;
    }
    return sum;
}

std::string PfaffPolynomial::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::string s;
    for (const auto& [e, c] : terms_) {
        if (!s.empty()) {
            s += " + ";
        }
        s += "(" + c.to_string() + ")";
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) {
                continue;
            }
            s += i == 0 ? "*x" : "*y" + std::to_string(i);
            if (e[i] != 1) {
                s += "^" + std::to_string(e[i]);
            }
        }
    }
    return s;
}

bool OpenInterval::contains(const Rational& x) const
{
    return (!lo || *lo < x) && (!hi || x < *hi);
}

bool OpenInterval::contains(const Rational& a, const Rational& b) const
{
    return contains(a) && contains(b);
}

PfaffianChain::PfaffianChain(int alpha, std::vector<PfaffPolynomial> g, std::shared_ptr<const ChainEvaluator> evaluator,
                             OpenInterval domain)
    : alpha_(alpha), g_(std::move(g)), evaluator_(std::move(evaluator)), domain_(std::move(domain))
{
    if (g_.empty()) {
        throw PreconditionError("Pfaffian chain must have order r >= 1");
    }
    if (alpha_ < 1) {
        throw PreconditionError("Pfaffian chain degree alpha must be >= 1");
    }
    if (!evaluator_) {
        throw PreconditionError("Pfaffian chain needs an evaluator");
    }
    const int variables = static_cast<int>(g_.size()) + 1;
    for (std::size_t j = 0; j < g_.size(); ++j) {
        if (g_[j].variables() != variables) {
            throw PreconditionError("chain polynomial g_" + std::to_string(j + 1) + " has wrong variable count");
        }
        if (g_[j].degree() > alpha_) {
            throw PreconditionError("chain polynomial g_" + std::to_string(j + 1) + " exceeds degree alpha");
        }
        // g_j may use x, y_1..y_j only.
        if (!g_[j].independent_of_from(static_cast<int>(j) + 2)) {
            throw PreconditionError("chain polynomial g_" + std::to_string(j + 1) + " is not triangular");
        }
    }
    if (domain_.lo && domain_.hi && *domain_.lo >= *domain_.hi) {
        throw PreconditionError("chain domain is empty");
    }
}

PfaffianChain PfaffianChain::with_domain(OpenInterval domain) const
{
    auto inside = [&](const std::optional<Rational>& outer_lo, const std::optional<Rational>& inner_lo) {
        return !outer_lo || (inner_lo && *inner_lo >= *outer_lo);
    };
    const bool lo_ok = inside(domain_.lo, domain.lo);
    const bool hi_ok = !domain_.hi || (domain.hi && *domain.hi <= *domain_.hi);
    if (!lo_ok || !hi_ok) {
        throw PreconditionError("restricted domain leaves the chain's domain");
    }
    return PfaffianChain(alpha_, g_, evaluator_, std::move(domain));
}

PfaffianFunction::PfaffianFunction(std::shared_ptr<const PfaffianChain> chain, PfaffPolynomial p, int beta)
    : chain_(std::move(chain)), p_(std::move(p)), beta_(beta)
{
    if (!chain_) {
        throw PreconditionError("Pfaffian function needs a chain");
    }
    if (beta_ < 1) {
        throw PreconditionError("Pfaffian function degree beta must be >= 1");
    }
    if (p_.variables() != chain_->order() + 1) {
        throw PreconditionError("Pfaffian function polynomial has wrong variable count");
    }
    if (p_.degree() > beta_) {
        throw PreconditionError("Pfaffian function polynomial exceeds degree beta");
    }
}

PfaffianFunction PfaffianFunction::plus_constant(const Constant& c) const
{
    return PfaffianFunction(chain_, p_ + PfaffPolynomial::constant(p_.variables(), c), beta_);
}

Interval PfaffianFunction::enclose(const Interval& x, Precision prec) const
{
    std::vector<Interval> values;
    values.reserve(static_cast<std::size_t>(order()) + 1);
    values.push_back(x);
    for (auto& v : chain_->evaluator().enclose(x, prec)) {
        values.push_back(std::move(v));
    }
    return p_.enclose(values, prec);
}

PfaffianFunction chain_function(std::shared_ptr<const PfaffianChain> chain, int j)
{
    if (j < 1 || j > chain->order()) {
        throw PreconditionError("chain function index out of range");
    }
    const int variables = chain->order() + 1;
    return PfaffianFunction(std::move(chain), PfaffPolynomial::variable(variables, j), 1);
}

PfaffianFunction derivative(const PfaffianFunction& f)
{
    const auto& p = f.polynomial();
    PfaffPolynomial d = p.partial(0);
    const auto& g = f.chain().g();
    for (std::size_t j = 0; j < g.size(); ++j) {
        PfaffPolynomial dp = p.partial(static_cast<int>(j) + 1);
        if (!dp.is_zero()) {
            d += dp * g[j];
        }
    }
    const int bound = f.beta() + f.alpha() - 1;
    const int declared = std::max(1, std::min(d.degree(), bound));
    return PfaffianFunction(f.chain_ptr(), std::move(d), declared);
}

PfaffianFunction derivative(const PfaffianFunction& f, int k)
{
    if (k < 0) {
        throw PreconditionError("derivative order must be >= 0");
    }
    PfaffianFunction out = f;
    for (int i = 0; i < k; ++i) {
        out = derivative(out);
    }
    return out;
}

namespace {

Integer pow_int(const Integer& base, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Integer two_pow_triangle(int r)
{
    return Integer(1) << static_cast<mp_bitcnt_t>(r * (r - 1) / 2);
}

} // namespace

Integer zero_count_bound(int r, int alpha, int beta, int d)
{
    if (r < 1 || alpha < 1 || beta < 1 || d < 1) {
        throw PreconditionError("zero_count_bound requires r, alpha, beta, d >= 1");
    }
    const Integer db = Integer(static_cast<long>(d)) * beta;
    return two_pow_triangle(r) * db * pow_int(Integer(static_cast<long>(r) * alpha) + db, static_cast<unsigned long>(r));
}

Integer inverse_derivative_zero_bound(int r, int alpha, int beta, int k)
{
    if (k < 1) {
        throw PreconditionError("inverse_derivative_zero_bound requires k >= 1");
    }
    if (r < 1 || alpha < 1 || beta < 1) {
        throw PreconditionError("inverse_derivative_zero_bound requires r, alpha, beta >= 1");
    }
    const Integer gamma = Integer(static_cast<long>(k) - 1) * (Integer(beta) + Integer(static_cast<long>(k)) * (alpha - 1));
    return two_pow_triangle(r) * gamma * pow_int(Integer(static_cast<long>(r) * alpha) + gamma, static_cast<unsigned long>(r));
}

Interval evaluate(const PfaffianFunction& f, const Rational& x, long bits)
{
    if (!f.chain().domain().contains(x)) {
        throw PreconditionError("evaluate: x = " + format_rational(x) + " is outside the chain's domain");
    }
    constexpr Precision kCeiling = Precision(1) << 20;
    Precision w = static_cast<Precision>(bits) + 32;
    while (w <= kCeiling) {
        Interval enc = f.enclose(Interval(x, w), w);
        if (enc.narrower_than_pow2(bits)) {
            return enc;
        }
        // Large magnitudes need extra bits for the same absolute width.
        Precision next = 2 * w;
        const double mag = std::max(std::abs(enc.lo_double()), std::abs(enc.hi_double()));
        if (std::isfinite(mag) && mag > 1.0) {
            next = std::max(next, static_cast<Precision>(bits + static_cast<long>(std::log2(mag)) + 64));
        }
        if (!std::isfinite(mag)) {
            next = std::max(next, 8 * w);
        }
        w = next;
    }
    throw PrecisionExhausted("evaluate: evaluator cannot reach 2^-" + std::to_string(bits) + " at x = " +
                             format_rational(x));
}

} // namespace pfaffcount
