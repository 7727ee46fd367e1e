#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pfaffcount/constant.hpp"
#include "pfaffcount/interval.hpp"
#include "pfaffcount/rational.hpp"

namespace pfaffcount {

/// Polynomial in (x, y_1, ..., y_r) with Constant coefficients. Variable 0
/// is x; variable j is y_j.
class PfaffPolynomial {
public:
    using Exponents = std::vector<int>;

    explicit PfaffPolynomial(int variables = 1);

    static PfaffPolynomial constant(int variables, const Constant& c);
    /// The single variable `index` (0 = x).
    static PfaffPolynomial variable(int variables, int index);

    int variables() const noexcept { return variables_; }
    const std::map<Exponents, Constant>& terms() const noexcept { return terms_; }

    /// Adds c * monomial; exponents.size() must equal variables().
    void add_term(const Exponents& exponents, const Constant& c);

    bool is_zero() const noexcept { return terms_.empty(); }
    /// Total degree; -1 for the zero polynomial.
    int degree() const;
    /// True when no term involves variables >= first.
    bool independent_of_from(int first) const;
    bool has_rational_coefficients() const;

    PfaffPolynomial partial(int index) const;

    PfaffPolynomial& operator+=(const PfaffPolynomial& o);
    PfaffPolynomial& operator-=(const PfaffPolynomial& o);
    PfaffPolynomial& operator*=(const PfaffPolynomial& o);
    friend PfaffPolynomial operator+(PfaffPolynomial a, const PfaffPolynomial& b) { return a += b; }
    friend PfaffPolynomial operator-(PfaffPolynomial a, const PfaffPolynomial& b) { return a -= b; }
    friend PfaffPolynomial operator*(PfaffPolynomial a, const PfaffPolynomial& b) { return a *= b; }
    friend bool operator==(const PfaffPolynomial& a, const PfaffPolynomial& b)
    {
        return a.variables_ == b.variables_ && a.terms_ == b.terms_;
    }

    /// Enclosure over boxes: values[i] encloses variable i.
    Interval enclose(const std::vector<Interval>& values, Precision prec) const;

    std::string to_string() const;

private:
    int variables_;
    std::map<Exponents, Constant> terms_;
};

/// Open domain (lo, hi); an empty endpoint is infinite.
struct OpenInterval {
    std::optional<Rational> lo;
    std::optional<Rational> hi;

    bool contains(const Rational& x) const;
    /// Closed [a, b] lies inside the open domain.
    bool contains(const Rational& a, const Rational& b) const;
};

/// Supplies certified enclosures of the chain functions (f_1..f_r).
class ChainEvaluator {
public:
    virtual ~ChainEvaluator() = default;

    /// Enclosures of f_1..f_r over every point of x. Throws PrecisionExhausted
    /// when x leaves the evaluator's natural domain.
    virtual std::vector<Interval> enclose(const Interval& x, Precision prec) const = 0;

    /// Registry name ("exp", "exp2", ...).
    virtual std::string name() const = 0;
    /// Name/value parameters, serialized alongside the chain.
    virtual std::map<std::string, std::string> parameters() const { return {}; }
};

/// Pfaffian chain of order r and degree alpha on an open interval:
/// f_j' = g_j(x, f_1, ..., f_j).
class PfaffianChain {
public:
    PfaffianChain(int alpha, std::vector<PfaffPolynomial> g, std::shared_ptr<const ChainEvaluator> evaluator,
                  OpenInterval domain);

    int order() const noexcept { return static_cast<int>(g_.size()); }
    int alpha() const noexcept { return alpha_; }
    const std::vector<PfaffPolynomial>& g() const noexcept { return g_; }
    const ChainEvaluator& evaluator() const noexcept { return *evaluator_; }
    const std::shared_ptr<const ChainEvaluator>& evaluator_ptr() const noexcept { return evaluator_; }
    const OpenInterval& domain() const noexcept { return domain_; }

    /// Restricts the domain (must stay inside the evaluator's domain).
    PfaffianChain with_domain(OpenInterval domain) const;

private:
    int alpha_;
    std::vector<PfaffPolynomial> g_;
    std::shared_ptr<const ChainEvaluator> evaluator_;
    OpenInterval domain_;
};

/// f(x) = P(x, f_1(x), ..., f_r(x)) with deg P <= beta.
class PfaffianFunction {
public:
    PfaffianFunction(std::shared_ptr<const PfaffianChain> chain, PfaffPolynomial p, int beta);

    const PfaffianChain& chain() const noexcept { return *chain_; }
    const std::shared_ptr<const PfaffianChain>& chain_ptr() const noexcept { return chain_; }
    const PfaffPolynomial& polynomial() const noexcept { return p_; }
    int beta() const noexcept { return beta_; }
    int order() const noexcept { return chain_->order(); }
    int alpha() const noexcept { return chain_->alpha(); }

    /// Same chain, polynomial P + c.
    PfaffianFunction plus_constant(const Constant& c) const;

    /// Enclosure of f over every point of x.
    Interval enclose(const Interval& x, Precision prec) const;

private:
    std::shared_ptr<const PfaffianChain> chain_;
    PfaffPolynomial p_;
    int beta_;
};

/// Built-in chains. Each carries its canonical g and a certified evaluator.
namespace chains {

/// f_1 = exp(rate * x), g_1 = rate * y_1.
std::shared_ptr<const PfaffianChain> exp(const Rational& rate = Rational(1));
/// f_1 = 2^x, g_1 = log2 * y_1.
std::shared_ptr<const PfaffianChain> exp2();
/// f_1 = q^x for rational q > 0, q != 1; g_1 = log(q) * y_1.
std::shared_ptr<const PfaffianChain> expq(const Rational& base);
/// On (0, inf): f_1 = 1/x (g_1 = -y_1^2), f_2 = log x (g_2 = y_1).
std::shared_ptr<const PfaffianChain> log();
/// On (0, inf): f_1 = 1/x, f_2 = x^e (g_2 = e * y_1 * y_2).
std::shared_ptr<const PfaffianChain> power(const Rational& exponent);
/// f_1 = e^x, f_2 = e^(e^x): g_1 = y_1, g_2 = y_1 y_2.
std::shared_ptr<const PfaffianChain> expexp();

/// Chain of explicit rational functions f_j = num_j / den_j (coefficients
/// listed by ascending power of x). The supplied g must be consistent with
/// the functions; this is checked by interval evaluation at sample points.
struct RationalFunction {
    std::vector<Rational> num;
    std::vector<Rational> den;
};
std::shared_ptr<const PfaffianChain> rational(std::vector<RationalFunction> functions, std::vector<PfaffPolynomial> g,
                                              int alpha, OpenInterval domain);

/// The functions of a chain built by rational(); nullopt for other chains.
std::optional<std::vector<RationalFunction>> rational_functions(const PfaffianChain& chain);

/// f_1 = 1 / (1 + x^2), g_1 = -2 x y_1^2 (degree 3).
std::shared_ptr<const PfaffianChain> inverse_one_plus_square();

/// Looks up a built-in by registry name and parameters.
std::shared_ptr<const PfaffianChain> by_name(const std::string& name, const std::map<std::string, std::string>& params);

} // namespace chains

/// The function y_j of a chain (P = y_j, beta = 1).
PfaffianFunction chain_function(std::shared_ptr<const PfaffianChain> chain, int j);

/// f' as a Pfaffian function with the same chain:
/// P' = dP/dx + sum_j dP/dy_j * g_j. Declared degree min(deg P', beta + alpha - 1), at least 1.
PfaffianFunction derivative(const PfaffianFunction& f);
PfaffianFunction derivative(const PfaffianFunction& f, int k);

/// Upper bound on the number of solutions of P(x, f(x)) = 0, deg P = d, for nonalgebraic f:
/// 2^{r(r-1)/2} d beta (r alpha + d beta)^r.
Integer zero_count_bound(int r, int alpha, int beta, int d);

/// Upper bound on zeros of the k-th derivative of the inverse of f:
/// with g = (k-1)(beta + k(alpha-1)), 2^{r(r-1)/2} g (r alpha + g)^r.
Integer inverse_derivative_zero_bound(int r, int alpha, int beta, int k);

/// Enclosure of f(x) of width < 2^-bits, escalating the working precision.
/// Throws PreconditionError when x is outside the chain's domain and
/// PrecisionExhausted when the evaluator cannot reach the width.
Interval evaluate(const PfaffianFunction& f, const Rational& x, long bits);

} // namespace pfaffcount
