#include "pfaffcount/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pfaffcount/errors.hpp"
#include "pfaffcount/pfaffian.hpp"

namespace pfaffcount {

namespace {

constexpr Precision kPrec = 192;

Integer ipow(const Integer& base, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Integer big(std::int64_t v) { return Integer(static_cast<long>(v)); }

void require_chain(int r, int alpha, int beta)
{
    if (r < 1 || alpha < 1 || beta < 1) {
        throw PreconditionError("chain parameters must satisfy r, alpha, beta >= 1");
    }
}

// Closed forms for total degree <= d: D = (d+1)(d+2)/2, R = d(d+1)(d+2)/3, s = t = d.
MonomialParameters total_degree_parameters(int d)
{
    const std::int64_t dd = d;
    return parameters_from_sums((dd + 1) * (dd + 2) / 2, dd * (dd + 1) * (dd + 2) / 3, dd, dd);
}

double log_double(const Integer& z)
{
    long e = 0;
    const double m = mpz_get_d_2exp(&e, z.get_mpz_t());
    return std::log(m) + static_cast<double>(e) * std::log(2.0);
}

// Double-precision log pipeline used only to locate the minimizing d.
double approx_log_pipeline(int r, int alpha, int beta, double log_h, int d)
{
    const double D = (d + 1.0) * (d + 2.0) / 2.0;
    const double R = d * (d + 1.0) * (d + 2.0) / 3.0;
    const double rho = 2.0 * R / (D * (D - 1.0));
    const double sigma = 3.0 * rho;
    const double ln2 = std::log(2.0);
    const double c_value = std::exp(2.0 * (std::lgamma(D + 1.0) + R * std::log(D)) / (D * (D - 1.0))) + 1.0;
    const double inner = beta + D * (alpha - 1.0);
    const double rr = static_cast<double>(r);
    const double log_budget = log_double(slope_interval_majorant(r, alpha, beta)) + 2.0 * std::log(D) +
                              rr * (rr - 1.0) * ln2 + std::log(inner) + rr * std::log(rr * alpha + D * inner);
    const double log_recon = std::log(6.0 * d * d) + (2.0 / rho) * ln2 + rho * ln2 + 4.0 * rho * log_h;
    const double log_main = std::log(4.0 * c_value * D) + 2.0 * ln2 / rho;
    const double log_lemma = log_main + std::log1p(2.0 * std::exp(-log_main)) + rho * (ln2 + log_h) + sigma * log_h;
    const double log_points = rr * (rr - 1.0) / 2.0 * ln2 + std::log(static_cast<double>(d) * beta) +
                              rr * std::log(rr * alpha + static_cast<double>(d) * beta);
    return log_budget + std::max(log_recon, log_lemma) + log_points;
}

} // namespace

Integer slope_interval_count(int r, int alpha, int beta)
{
    require_chain(r, alpha, beta);
    const Integer two_pow = ipow(2, static_cast<unsigned long>(r * (r - 1) / 2));
    return 2 * two_pow * big(beta + alpha - 1) * big(static_cast<std::int64_t>(r) * alpha + beta + alpha - 1) + 1;
}

Integer slope_interval_majorant(int r, int alpha, int beta)
{
    require_chain(r, alpha, beta);
    return ipow(2, static_cast<unsigned long>(1 + r * (r - 1) / 2)) *
           ipow(big(static_cast<std::int64_t>(r + 1) * (alpha + beta)), static_cast<unsigned long>(r + 1));
}

IntervalBudget thm13_interval_budget(int r, int alpha, int beta, std::int64_t D)
{
    require_chain(r, alpha, beta);
    if (D < 2) {
        throw PreconditionError("interval budget needs D >= 2");
    }
    const Integer Dz = big(D);
    const Integer inner = big(beta) + Dz * big(alpha - 1);
    const Integer common = slope_interval_majorant(r, alpha, beta) * Dz * Dz *
                           ipow(2, static_cast<unsigned long>(r * (r - 1))) * inner;
    IntervalBudget b;
    b.bare_r = common * ipow(big(r) + Dz * inner, static_cast<unsigned long>(r));
    b.r_alpha = common * ipow(big(static_cast<std::int64_t>(r) * alpha) + Dz * inner, static_cast<unsigned long>(r));
    b.used = std::max(b.bare_r, b.r_alpha);
    return b;
}

Interval Thm13Report::pipeline_value() const { return exp(log_pipeline); }
Interval Thm13Report::simple_value() const { return exp(log_simple); }
bool Thm13Report::below_simple() const { return log_pipeline.certainly_le(log_simple); }

Thm13Report thm13_pipeline_log(int r, int alpha, int beta, const Interval& log_H, int d)
{
    require_chain(r, alpha, beta);
    if (d < 2) {
        throw PreconditionError("pipeline degree must satisfy d >= 2");
    }
    if (log_H.certainly_lt(log(Interval(3L, kPrec)))) {
        throw PreconditionError("pipeline needs H >= 3");
    }
    Thm13Report rep;
    rep.r = r;
    rep.alpha = alpha;
    rep.beta = beta;
    rep.log_H = log_H;
    rep.d = d;
    const auto p = total_degree_parameters(d);
    rep.D = p.D;
    rep.rho = *p.rho;
    rep.interval_budget = thm13_interval_budget(r, alpha, beta, p.D).used;
    rep.points_per_curve = zero_count_bound(r, alpha, beta, d);

    const Interval ln2 = log(Interval(2L, kPrec));
    const Interval ln4 = ln2 * Interval(2L, kPrec);
    const Interval rho(rep.rho, kPrec);
    const Interval inv_rho(Rational(1) / rep.rho, kPrec);
    const Interval sigma(*p.sigma, kPrec);
    const Interval four_pow = exp(ln4 * inv_rho);

    const Interval log_recon = log(Interval(6L * d * d, kPrec)) + ln4 * inv_rho + rho * ln2 +
                               Interval(4L, kPrec) * rho * log_H;
    Interval lemma_pref = Interval(4L, kPrec) * Interval(*p.C_upper, kPrec) * Interval(static_cast<long>(p.D), kPrec) *
                          four_pow;
    lemma_pref += Interval(2L, kPrec);
    const Interval log_lemma = log(lemma_pref) + rho * (ln2 + log_H) + sigma * log_H;
    rep.curves_reconstructed = exp(log_recon);
    rep.curves_lemma = exp(log_lemma);
    rep.reconstruction_below_lemma = log_recon.certainly_lt(log_lemma);
    const Interval& log_curves = log_recon.hi_double() >= log_lemma.hi_double() ? log_recon : log_lemma;
    rep.curves_per_interval = exp(log_curves);

    rep.log_pipeline = log(Interval::from_integer(rep.interval_budget, kPrec)) + log_curves +
                       log(Interval::from_integer(rep.points_per_curve, kPrec));
    rep.log_simple = Interval(5L, kPrec) * sqrt(log_H);
    return rep;
}

Thm13Report thm13_pipeline(int r, int alpha, int beta, const Integer& H, int d)
{
    if (H < 3) {
        throw PreconditionError("pipeline needs H >= 3");
    }
    return thm13_pipeline_log(r, alpha, beta, log(Interval::from_integer(H, kPrec)), d);
}

int thm13_d_max(double log_H)
{
    // t = 3(d+3)/8 near sqrt(4 log H / log 4).
    const double t = std::sqrt(4.0 * std::max(log_H, 1.0) / std::log(4.0));
    const double d_opt = 8.0 * t / 3.0 - 3.0;
    return std::max(12, static_cast<int>(std::ceil(3.0 * d_opt)) + 10);
}

Thm13Report thm13_best(int r, int alpha, int beta, const Interval& log_H)
{
    const double lh = log_H.mid_double();
    const int d_max = thm13_d_max(lh);
    int best = 2;
    double best_value = std::numeric_limits<double>::infinity();
    for (int d = 2; d <= d_max; ++d) {
        const double v = approx_log_pipeline(r, alpha, beta, lh, d);
        if (v < best_value) {
            best_value = v;
            best = d;
        }
    }
    return thm13_pipeline_log(r, alpha, beta, log_H, best);
}

Thm13Report thm13_best(int r, int alpha, int beta, const Integer& H)
{
    if (H < 3) {
        throw PreconditionError("pipeline needs H >= 3");
    }
    return thm13_best(r, alpha, beta, log(Interval::from_integer(H, kPrec)));
}

namespace {

bool passes(int r, int alpha, int beta, const Integer& H)
{
    return thm13_best(r, alpha, beta, log(Interval::from_integer(H, kPrec))).below_simple();
}

bool passes_pow2(int r, int alpha, int beta, long k)
{
    const Interval log_h = log(Interval(2L, kPrec)) * Interval(k, kPrec);
    return thm13_best(r, alpha, beta, log_h).below_simple();
}

// Least H (to mantissa resolution) with a passing pipeline, searching bit lengths above k_min.
Integer search_from(int r, int alpha, int beta, long k_min)
{
    long lo = k_min;
    long step = 1;
    long hi = k_min + step;
    while (!passes_pow2(r, alpha, beta, hi)) {
        lo = hi;
        step *= 2;
        hi = lo + step;
        if (hi > (1L << 40)) {
            throw PrecisionExhausted("threshold search did not terminate");
        }
    }
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        (passes_pow2(r, alpha, beta, mid) ? hi : lo) = mid;
    }
    Integer h_lo = ipow(2, static_cast<unsigned long>(hi - 1));
    Integer h_hi = ipow(2, static_cast<unsigned long>(hi));
    for (int step_count = 0; step_count < 64 && h_hi - h_lo > 1; ++step_count) {
        const Integer mid = (h_lo + h_hi) / 2;
        (passes(r, alpha, beta, mid) ? h_hi : h_lo) = mid;
    }
    return h_hi;
}

} // namespace

Thm13Threshold thm13_threshold(int r, int alpha, int beta)
{
    require_chain(r, alpha, beta);
    Thm13Threshold th;
    long k_min = 1;
    for (;;) {
        th.H0 = search_from(r, alpha, beta, k_min);
        th.log_H0 = log(Interval::from_integer(th.H0, kPrec));
        th.probes.clear();
        th.all_probes_pass = true;
        std::optional<Interval> failed;
        for (int i = 0; i < 64; ++i) {
            const Interval scale(make_rational(63 + 3 * i, 63), kPrec);
            Interval log_h = th.log_H0 * scale;
            Thm13Report rep = thm13_best(r, alpha, beta, log_h);
            if (!rep.below_simple()) {
                th.all_probes_pass = false;
                failed = log_h;
            }
            th.probes.push_back(ThresholdProbe{std::move(rep)});
        }
        if (th.all_probes_pass || th.restarts >= 8) {
            break;
        }
        ++th.restarts;
        k_min = static_cast<long>(std::ceil(failed->hi_double() / std::log(2.0)));
    }
    const mp_bitcnt_t tz = mpz_scan1(th.H0.get_mpz_t(), 0);
    th.exponent = static_cast<long>(tz);
    mpz_fdiv_q_2exp(th.mantissa.get_mpz_t(), th.H0.get_mpz_t(), tz);
    const auto& top = th.probes.back().report;
    th.top_log10_ratio = (top.log_pipeline.hi_double() - top.log_simple.lo_double()) / std::log(10.0);
    return th;
}

Interval thm14_bound(int b, int c, const Integer& H)
{
    if (b < 2 || c < 2) {
        throw PreconditionError("thm14_bound: b, c >= 2 fails");
    }
    if (H < 3) {
        throw PreconditionError("thm14_bound: H >= 3 fails");
    }
    const int d = std::max(b, c);
    const Integer coeff = ipow(big(6L * d), 10) * ipow(4, static_cast<unsigned long>(d));
    const Interval h = Interval::from_integer(H, kPrec);
    return Interval::from_integer(coeff, kPrec) * pow(h, make_rational(2, d)) * pow(log(h), 5UL);
}

Thm14Constants thm14_pipeline_constants(int b, int c, int delta)
{
    if (b < 2 || c < 2) {
        throw PreconditionError("thm14 constants: b, c >= 2 fails");
    }
    const int d = std::max(b, c);
    if (delta < d) {
        throw PreconditionError("thm14 constants: delta >= d fails (delta = " + std::to_string(delta) +
                                ", d = " + std::to_string(d) + ")");
    }
    const bool d_is_b = d == b;
    MonomialSet M = d_is_b ? box_set(d, delta) : box_set(delta, d);
    const auto D = static_cast<std::int64_t>(M.size());
    const Integer dz = big(d);
    const Integer dl = big(delta);
    const Integer four_d = ipow(4, static_cast<unsigned long>(d));
    return Thm14Constants{
        .d = d,
        .delta = delta,
        .d_is_b = d_is_b,
        .M = std::move(M),
        .D = D,
        .singular_points = 2 * dz * (2 * dz - 1),
        .slope_points = 4 * dz * (dz - 1),
        .graphs = 20 * ipow(dz, 3),
        .subintervals = 8 * dz * dz * big(D) * big(D),
        .bezout_cap = big(b + c) * 2 * dl,
        .per_graph_coeff = 80 * ipow(dz, 3) * ipow(dl, 3) * four_d,
        .box_factor = 4,
        .final_coeff = 100 * ipow(2 * dz, 10) * four_d * ipow(dl, 5),
        .exponent = make_rational(2, d) + make_rational(2, delta),
    };
}

Thm14Pipeline thm14_pipeline(int b, int c, const Integer& H)
{
    if (H < 3) {
        throw PreconditionError("thm14 pipeline: H >= 3 fails");
    }
    Thm14Pipeline out;
    out.d = std::max(b, c);
    const Interval h = Interval::from_integer(H, kPrec);
    const Interval lh = log(h);
    const double lo = std::floor(lh.lo_double());
    if (lo != std::floor(lh.hi_double())) {
        throw PrecisionExhausted("thm14 pipeline: floor(log H) undecided");
    }
    out.delta = static_cast<int>(lo) + 1;
    out.small_H_regime = out.delta < out.d;
    const auto k = thm14_pipeline_constants(b, c, std::max(out.delta, out.d));
    out.assembled = Interval::from_integer(k.final_coeff, kPrec) * pow(h, k.exponent);
    out.value = out.assembled;
    if (out.small_H_regime) {
        out.trivial = big(c) * (2 * H * H + 1);
        const Interval t = Interval::from_integer(*out.trivial, kPrec);
        if (t.hi_double() < out.assembled.hi_double()) {
            out.value = t;
        }
    }
    return out;
}

} // namespace pfaffcount
