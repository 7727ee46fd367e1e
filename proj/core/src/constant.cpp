#include "pfaffcount/constant.hpp"

#include "pfaffcount/errors.hpp"

namespace pfaffcount {

namespace {

bool log_argument(const std::string& name, Rational& arg)
{
    if (name.size() < 6 || name.rfind("log(", 0) != 0 || name.back() != ')') {
        return false;
    }
    try {
        arg = parse_rational(std::string_view(name).substr(4, name.size() - 5));
    } catch (const FormatError&) {
        return false;
    }
    return arg > 0 && arg != 1;
}

Interval enclose_symbol(const std::string& name, Precision prec)
{
    if (name == "log2") {
        return Interval::log2(prec);
    }
    if (name == "e") {
        return Interval::euler(prec);
    }
    if (name == "pi") {
        return Interval::pi(prec);
    }
    Rational arg;
    if (log_argument(name, arg)) {
        return log(Interval(arg, prec));
    }
    throw FormatError("unknown constant '" + name + "'");
}

} // namespace

bool is_known_symbol(const std::string& name)
{
    Rational arg;
    return name == "log2" || name == "e" || name == "pi" || log_argument(name, arg);
}

Constant::Constant(const Rational& q)
{
    if (q != 0) {
        terms_.emplace(Monomial{}, q);
    }
}

Constant Constant::symbol(const std::string& name, int power)
{
    if (!is_known_symbol(name)) {
        throw FormatError("unknown constant '" + name + "'");
    }
    if (power < 0) {
        throw FormatError("negative power of constant '" + name + "'");
    }
    Constant c;
    c.terms_.emplace(power == 0 ? Monomial{} : Monomial{{name, power}}, Rational(1));
    return c;
}

bool Constant::is_rational() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Constant::rational_value() const
{
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

Interval Constant::enclose(Precision prec) const
{
    Interval sum(prec);
    for (const auto& [mono, coeff] : terms_) {
        Interval term(coeff, prec);
        for (const auto& [name, power] : mono) {
            term *= pow(enclose_symbol(name, prec), static_cast<unsigned long>(power));
        }
        sum += term;
    }
    return sum;
}

Constant& Constant::operator+=(const Constant& o)
{
    for (const auto& [mono, coeff] : o.terms_) {
        auto [it, inserted] = terms_.emplace(mono, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }
    return *this;
}

Constant& Constant::operator-=(const Constant& o)
{
    return *this += -o;
}

Constant Constant::operator-() const
{
    Constant r = *this;
    for (auto& [mono, coeff] : r.terms_) {
        coeff = -coeff;
    }
    return r;
}

Constant& Constant::operator*=(const Constant& o)
{
    Constant product;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            std::map<std::string, int> merged;
            for (const auto& [n, p] : ma) {
                merged[n] += p;
            }
            for (const auto& [n, p] : mb) {
                merged[n] += p;
            }
            product += Constant::from_monomial(Monomial(merged.begin(), merged.end()), ca * cb);
        }
    }
    *this = std::move(product);
    return *this;
}

std::string Constant::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::string s;
    for (const auto& [mono, coeff] : terms_) {
        if (!s.empty()) {
            s += " + ";
        }
        s += format_rational(coeff);
        for (const auto& [name, power] : mono) {
            s += "*" + name;
            if (power != 1) {
                s += "^" + std::to_string(power);
            }
        }
    }
    return s;
}

} // namespace pfaffcount
