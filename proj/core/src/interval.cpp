#include "pfaffcount/interval.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

#include "pfaffcount/errors.hpp"

namespace pfaffcount {

void Interval::init(Precision prec)
{
    prec_ = prec;
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
}

Interval::Interval(Precision prec)
{
    init(prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rational& q, Precision prec)
{
    init(prec);
    mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Rational& lo, const Rational& hi, Precision prec)
{
    if (lo > hi) {
        throw PreconditionError("interval with lo > hi");
    }
    init(prec);
    mpfr_set_q(lo_, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, hi.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(long value, Precision prec)
{
    init(prec);
    mpfr_set_si(lo_, value, MPFR_RNDD);
    mpfr_set_si(hi_, value, MPFR_RNDU);
}

Interval::Interval(const Interval& other)
{
    init(other.prec_);
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept
{
    init(other.prec_);
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other)
{
    if (this != &other) {
        mpfr_set_prec(lo_, other.prec_);
        mpfr_set_prec(hi_, other.prec_);
        prec_ = other.prec_;
        mpfr_set(lo_, other.lo_, MPFR_RNDD);
        mpfr_set(hi_, other.hi_, MPFR_RNDU);
    }
    return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept
{
    std::swap(prec_, other.prec_);
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
    return *this;
}

Interval::~Interval()
{
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval Interval::from_integer(const Integer& z, Precision prec)
{
    Interval r(prec);
    mpfr_set_z(r.lo_, z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, z.get_mpz_t(), MPFR_RNDU);
    return r;
}

Interval Interval::log2(Precision prec)
{
    Interval r(prec);
    mpfr_const_log2(r.lo_, MPFR_RNDD);
    mpfr_const_log2(r.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::euler(Precision prec)
{
    return exp(Interval(1L, prec));
}

Interval Interval::pi(Precision prec)
{
    Interval r(prec);
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::hull(const Interval& a, const Interval& b)
{
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

namespace {

Rational mpfr_to_rational(mpfr_srcptr x)
{
    if (mpfr_zero_p(x)) {
        return Rational(0);
    }
    if (!mpfr_number_p(x)) {
        throw PrecisionExhausted("interval endpoint is not a finite number");
    }
    Integer mant;
    const mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
    Rational q(mant);
    if (e >= 0) {
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    }
    q.canonicalize();
    return q;
}

std::string format_endpoint(mpfr_srcptr x, int digits, mpfr_rnd_t rnd)
{
    char* buf = nullptr;
    const char* fmt = rnd == MPFR_RNDU ? "%.*RUe" : "%.*RDe";
    if (mpfr_asprintf(&buf, fmt, digits, x) < 0 || buf == nullptr) {
        return "nan";
    }
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

} // namespace

Rational Interval::lo_rational() const { return mpfr_to_rational(lo_); }
Rational Interval::hi_rational() const { return mpfr_to_rational(hi_); }
double Interval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::mid_double() const
{
    mpfr_t m;
    mpfr_init2(m, prec_ + 1);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    const double d = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return d;
}

bool Interval::is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }
bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
bool Interval::is_positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::is_negative() const { return mpfr_sgn(hi_) < 0; }
bool Interval::is_exact_zero() const { return mpfr_zero_p(lo_) && mpfr_zero_p(hi_); }

bool Interval::contains(const Rational& q) const
{
    return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Interval::certainly_le(const Interval& other) const { return mpfr_lessequal_p(hi_, other.lo_) != 0; }
bool Interval::certainly_lt(const Interval& other) const { return mpfr_less_p(hi_, other.lo_) != 0; }

Interval Interval::width() const
{
    Interval r(prec_);
    mpfr_sub(r.hi_, hi_, lo_, MPFR_RNDU);
    mpfr_set_zero(r.lo_, 1);
    return r;
}

bool Interval::narrower_than_pow2(long bits) const
{
    mpfr_t w;
    mpfr_init2(w, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    const bool ok = mpfr_zero_p(w) || (mpfr_number_p(w) && mpfr_get_exp(w) <= -bits);
    mpfr_clear(w);
    return ok;
}

Interval Interval::operator-() const
{
    Interval r(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

namespace {

void widen_to(Interval& target, Precision prec, mpfr_ptr lo, mpfr_ptr hi)
{
    if (target.precision() < prec) {
        mpfr_prec_round(lo, prec, MPFR_RNDD);
        mpfr_prec_round(hi, prec, MPFR_RNDU);
    }
}

} // namespace

Interval& Interval::operator+=(const Interval& o)
{
    widen_to(*this, o.prec_, lo_, hi_);
    prec_ = std::max(prec_, o.prec_);
    mpfr_add(lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(hi_, hi_, o.hi_, MPFR_RNDU);
    return *this;
}

Interval& Interval::operator-=(const Interval& o)
{
    widen_to(*this, o.prec_, lo_, hi_);
    prec_ = std::max(prec_, o.prec_);
    mpfr_t nlo;
    mpfr_init2(nlo, prec_);
    mpfr_sub(nlo, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(hi_, hi_, o.lo_, MPFR_RNDU);
    mpfr_swap(lo_, nlo);
    mpfr_clear(nlo);
    return *this;
}

Interval& Interval::operator*=(const Interval& o)
{
    const Precision prec = std::max(prec_, o.prec_);
    mpfr_t p[4];
    mpfr_t q[4];
    for (int i = 0; i < 4; ++i) {
        mpfr_init2(p[i], prec);
        mpfr_init2(q[i], prec);
    }
    mpfr_srcptr a[2] = {lo_, hi_};
    mpfr_srcptr b[2] = {o.lo_, o.hi_};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            mpfr_mul(p[2 * i + j], a[i], b[j], MPFR_RNDD);
            mpfr_mul(q[2 * i + j], a[i], b[j], MPFR_RNDU);
        }
    }
    mpfr_set_prec(lo_, prec);
    mpfr_set_prec(hi_, prec);
    prec_ = prec;
    mpfr_set(lo_, p[0], MPFR_RNDD);
    mpfr_set(hi_, q[0], MPFR_RNDU);
    for (int i = 1; i < 4; ++i) {
        mpfr_min(lo_, lo_, p[i], MPFR_RNDD);
        mpfr_max(hi_, hi_, q[i], MPFR_RNDU);
    }
    for (int i = 0; i < 4; ++i) {
        mpfr_clear(p[i]);
        mpfr_clear(q[i]);
    }
    return *this;
}

Interval& Interval::operator/=(const Interval& o)
{
    if (o.contains_zero()) {
        throw PrecisionExhausted("interval division by an interval containing zero");
    }
    const Precision prec = std::max(prec_, o.prec_);
    Interval inv(prec);
    mpfr_ui_div(inv.lo_, 1, o.hi_, MPFR_RNDD);
    mpfr_ui_div(inv.hi_, 1, o.lo_, MPFR_RNDU);
    return *this *= inv;
}

std::string Interval::upper_decimal(int digits) const { return format_endpoint(hi_, digits, MPFR_RNDU); }
std::string Interval::lower_decimal(int digits) const { return format_endpoint(lo_, digits, MPFR_RNDD); }

Interval abs(const Interval& x)
{
    if (mpfr_sgn(x.lo_) >= 0) {
        return x;
    }
    if (mpfr_sgn(x.hi_) <= 0) {
        return -x;
    }
    Interval r(x.prec_);
    mpfr_set_zero(r.lo_, 1);
    mpfr_neg(r.hi_, x.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, x.hi_, MPFR_RNDU);
    return r;
}

Interval pow(const Interval& x, unsigned long n)
{
    Interval r(x.prec_);
    if (n == 0) {
        mpfr_set_ui(r.lo_, 1, MPFR_RNDD);
        mpfr_set_ui(r.hi_, 1, MPFR_RNDU);
        return r;
    }
    if (n % 2 == 1 || mpfr_sgn(x.lo_) >= 0) {
        mpfr_pow_ui(r.lo_, x.lo_, n, MPFR_RNDD);
        mpfr_pow_ui(r.hi_, x.hi_, n, MPFR_RNDU);
        return r;
    }
    if (mpfr_sgn(x.hi_) <= 0) {
        mpfr_pow_ui(r.lo_, x.hi_, n, MPFR_RNDD);
        mpfr_pow_ui(r.hi_, x.lo_, n, MPFR_RNDU);
        return r;
    }
    Interval m = abs(x);
    mpfr_set_zero(r.lo_, 1);
    mpfr_pow_ui(r.hi_, m.hi_, n, MPFR_RNDU);
    return r;
}

Interval exp(const Interval& x)
{
    Interval r(x.prec_);
    mpfr_exp(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, x.hi_, MPFR_RNDU);
    return r;
}

Interval exp2(const Interval& x)
{
    Interval r(x.prec_);
    mpfr_exp2(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_exp2(r.hi_, x.hi_, MPFR_RNDU);
    return r;
}

Interval log(const Interval& x)
{
    if (!x.is_positive()) {
        throw PrecisionExhausted("logarithm of an interval not contained in (0, inf)");
    }
    Interval r(x.prec_);
    mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
    return r;
}

Interval sqrt(const Interval& x)
{
    if (mpfr_sgn(x.lo_) < 0) {
        throw PrecisionExhausted("square root of an interval reaching below zero");
    }
    Interval r(x.prec_);
    mpfr_sqrt(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, x.hi_, MPFR_RNDU);
    return r;
}

Interval pow(const Interval& x, const Rational& e)
{
    if (e == 0) {
        return Interval(1L, x.precision());
    }
    if (e.get_den() == 1 && e > 0 && e.get_num().fits_ulong_p()) {
        return pow(x, e.get_num().get_ui());
    }
    return exp(Interval(e, x.precision()) * log(x));
}

Interval lgamma_int(unsigned long n, Precision prec)
{
    Interval r(prec);
    // log(n!) = lngamma(n + 1); MPFR's lngamma is correctly rounded.
    mpfr_t arg;
    mpfr_init2(arg, 64);
    mpfr_set_ui(arg, n + 1, MPFR_RNDN);
    mpfr_lngamma(r.lo_, arg, MPFR_RNDD);
    mpfr_lngamma(r.hi_, arg, MPFR_RNDU);
    mpfr_clear(arg);
    return r;
}

} // namespace pfaffcount
