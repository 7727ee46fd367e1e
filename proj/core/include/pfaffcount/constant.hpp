#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pfaffcount/interval.hpp"
#include "pfaffcount/rational.hpp"

namespace pfaffcount {

/// Real constant that can be enclosed to any precision: a polynomial with
/// rational coefficients in named transcendental constants.
///
/// Known symbols: "log2", "e", "pi", and "log(p/q)" for a positive rational
/// p/q != 1. Distinct symbols are treated as algebraically independent, so
/// is_zero() is exact for expressions that only use one of log2 and
/// log(2^k)-type symbols consistently.
class Constant {
public:
    using Monomial = std::vector<std::pair<std::string, int>>;  // sorted by symbol

    Constant() = default;
    Constant(const Rational& q);  // NOLINT: implicit from rationals is intended
    Constant(long v) : Constant(Rational(v)) {}

    /// Throws FormatError for unknown symbol names.
    static Constant symbol(const std::string& name, int power = 1);

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_rational() const;
    /// Rational value; only valid when is_rational().
    Rational rational_value() const;

    const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }

    Interval enclose(Precision prec) const;

    Constant& operator+=(const Constant& o);
    Constant& operator-=(const Constant& o);
    Constant& operator*=(const Constant& o);
    Constant operator-() const;
    friend Constant operator+(Constant a, const Constant& b) { return a += b; }
    friend Constant operator-(Constant a, const Constant& b) { return a -= b; }
    friend Constant operator*(Constant a, const Constant& b) { return a *= b; }
    friend bool operator==(const Constant& a, const Constant& b) { return a.terms_ == b.terms_; }

    std::string to_string() const;

private:
    static Constant from_monomial(Monomial m, const Rational& c)
    {
        Constant r;
        if (c != 0) {
            r.terms_.emplace(std::move(m), c);
        }
        return r;
    }

    std::map<Monomial, Rational> terms_;  // no zero coefficients
};

/// Validates a symbol name (see Constant).
bool is_known_symbol(const std::string& name);

} // namespace pfaffcount
