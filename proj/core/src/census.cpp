#include "pfaffcount/census.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "pfaffcount/errors.hpp"

namespace pfaffcount {

std::string to_string(CensusStatus s)
{
    return s == CensusStatus::exact ? "exact" : "lower-bound-with-candidates";
}

bool XDomain::contains(const Rational& x) const
{
    return (!lo || *lo <= x) && (!hi || x <= *hi);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Integer big(std::int64_t v) { return Integer(static_cast<long>(v)); }

// Runs work(i) for i < chunks on up to `jobs` threads; results keep chunk order.
template <class R, class F>
std::vector<R> run_chunks(std::size_t chunks, int jobs, F&& work)
{
    std::vector<R> out(chunks);
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, jobs)), chunks);
    if (workers <= 1) {
        for (std::size_t i = 0; i < chunks; ++i) {
            out[i] = work(i);
        }
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= chunks) {
                        return;
                    }
                    try {
                        out[i] = work(i);
                    } catch (...) {
                        const std::lock_guard lock(failure_mutex);
                        if (!failure) {
                            failure = std::current_exception();
                        }
                        next.store(chunks);
                        return;
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Univariate integer polynomials (ascending coefficients)

using IPoly = std::vector<Integer>;
using QPoly = std::vector<Rational>;

void trim(QPoly& p)
{
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
}

QPoly poly_rem(QPoly a, const QPoly& b)
{
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        const Rational factor = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[shift + i] -= factor * b[i];
        }
        a.pop_back();
        trim(a);
    }
    return a;
}

QPoly poly_quot(QPoly a, const QPoly& b)
{
    trim(a);
    if (a.size() < b.size()) {
        return {};
    }
    QPoly q(a.size() - b.size() + 1, Rational(0));
    while (a.size() >= b.size() && !a.empty()) {
        const Rational factor = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        q[shift] = factor;
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[shift + i] -= factor * b[i];
        }
        a.pop_back();
        trim(a);
    }
    return q;
}

QPoly poly_derivative(const QPoly& p)
{
    QPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) {
        d.push_back(p[i] * static_cast<long>(i));
    }
    trim(d);
    return d;
}

QPoly poly_gcd(QPoly a, QPoly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

int sign_at(const QPoly& p, const Rational& x)
{
    Rational acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = acc * x + p[i];
    }
    return sgn(acc);
}

class SturmChain {
public:
    explicit SturmChain(const QPoly& squarefree)
    {
        chain_.push_back(squarefree);
        chain_.push_back(poly_derivative(squarefree));
        while (!chain_.back().empty()) {
            QPoly r = poly_rem(chain_[chain_.size() - 2], chain_.back());
            for (auto& c : r) {
                c = -c;
            }
            if (r.empty()) {
                break;
            }
            chain_.push_back(std::move(r));
        }
    }

    int variations(const Rational& x) const
    {
        int count = 0;
        int last = 0;
        for (const auto& p : chain_) {
            const int s = sign_at(p, x);
            if (s != 0) {
                if (last != 0 && s != last) {
                    ++count;
                }
                last = s;
            }
        }
        return count;
    }

private:
    std::vector<QPoly> chain_;
};

// Q(p/q) * q^deg as an integer.
Integer scaled_value(const IPoly& Q, const Integer& p, const Integer& q)
{
    Integer acc = Q.back();
    Integer qpow = 1;
    for (std::size_t i = Q.size() - 1; i-- > 0;) {
        qpow *= q;
        acc = acc * p + Q[i] * qpow;
    }
    return acc;
}

void push_root(Integer p, Integer q, const Integer& H, std::vector<Rational>& roots)
{
    if (q < 0) {
        p = -p;
        q = -q;
    }
    Integer g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    if (g > 1) {
        mpz_divexact(p.get_mpz_t(), p.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), g.get_mpz_t());
    }
    if (abs(p) <= H && q <= H) {
        roots.push_back(make_rational(p, q));
    }
}

// Divisors d <= H of n > 0.
std::vector<Integer> small_divisors(const Integer& n, const Integer& H)
{
    std::vector<Integer> out;
    for (Integer d = 1; d <= H && d * d <= n; ++d) {
        if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0) {
            out.push_back(d);
            const Integer e = n / d;
            if (e != d && e <= H) {
                out.push_back(e);
            }
        }
    }
    return out;
}

void divisor_roots(const IPoly& Q, const Integer& H, std::vector<Rational>& roots)
{
    const auto ps = small_divisors(abs(Q.front()), H);
    const auto qs = small_divisors(abs(Q.back()), H);
    for (const auto& q : qs) {
        for (const auto& p0 : ps) {
            for (const Integer& p : {p0, Integer(-p0)}) {
                if (scaled_value(Q, p, q) == 0) {
                    push_root(p, q, H, roots);
                }
            }
        }
    }
}

void isolating_roots(const IPoly& Q, const Integer& H, std::vector<Rational>& roots)
{
    QPoly q(Q.begin(), Q.end());
    const QPoly g = poly_gcd(q, poly_derivative(q));
    const QPoly sf = g.size() > 1 ? poly_quot(q, g) : q;
    const SturmChain sturm(sf);
    const Rational target = Rational(1) / Rational(2 * H * H);
    const HeightBound hb(H);
    struct Span {
        Rational lo;
        Rational hi;
        int v_lo;
        int v_hi;
    };
    std::vector<Span> stack;
    const Rational lo0 = Rational(-H - 1);
    const Rational hi0 = Rational(H);
    stack.push_back({lo0, hi0, sturm.variations(lo0), sturm.variations(hi0)});
    while (!stack.empty()) {
        Span s = std::move(stack.back());
        stack.pop_back();
        if (s.v_lo - s.v_hi <= 0) {
            continue;
        }
        const Rational w = s.hi - s.lo;
        if (w < target) {
            for (const auto& y : rationals_in_interval(s.lo, s.hi, hb)) {
                if (sign_at(q, y) == 0) {
                    roots.push_back(y);
                }
            }
            continue;
        }
        const Rational mid = simplest_rational_between(s.lo + w / 4, s.hi - w / 4);
        const int v_mid = sturm.variations(mid);
        stack.push_back({s.lo, mid, s.v_lo, v_mid});
        stack.push_back({mid, s.hi, v_mid, s.v_hi});
    }
}

struct FiberResult {
    bool vertical = false;
    std::vector<Rational> roots;
};

// Rational roots of height <= H of sum_k C[k] y^k.
FiberResult solve_fiber(const IPoly& C, const Integer& H, const AlgebraicOptions& options)
{
    FiberResult out;
    std::size_t top = C.size();
    while (top > 0 && C[top - 1] == 0) {
        --top;
    }
    if (top == 0) {
        out.vertical = true;
        return out;
    }
    std::size_t low = 0;
    while (C[low] == 0) {
        ++low;
    }
    if (low > 0) {
        out.roots.emplace_back(0);
    }
    const IPoly Q(C.begin() + static_cast<std::ptrdiff_t>(low), C.begin() + static_cast<std::ptrdiff_t>(top));
    const std::size_t deg = Q.size() - 1;
    if (deg == 1) {
        push_root(-Q[0], Q[1], H, out.roots);
    } else if (deg == 2) {
        const Integer disc = Q[1] * Q[1] - 4 * Q[2] * Q[0];
        if (disc >= 0 && mpz_perfect_square_p(disc.get_mpz_t()) != 0) {
            Integer s;
            mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
            push_root(-Q[1] + s, 2 * Q[2], H, out.roots);
            if (s != 0) {
                push_root(-Q[1] - s, 2 * Q[2], H, out.roots);
            }
        }
    } else if (deg >= 3) {
        const bool within_cap = abs(Q.front()) <= options.divisor_cap && abs(Q.back()) <= options.divisor_cap;
        if (options.strategy == RootStrategy::isolating ||
            (options.strategy == RootStrategy::automatic && !within_cap)) {
            isolating_roots(Q, H, out.roots);
        } else if (!within_cap) {
            throw PreconditionError("census: fiber coefficient exceeds the divisor cap " +
                                    options.divisor_cap.get_str() +
                                    "; rerun with the isolating strategy (isolate real roots, test the unique "
                                    "height-<=H rational in each isolating interval)");
        } else {
            divisor_roots(Q, H, out.roots);
        }
    }
    std::sort(out.roots.begin(), out.roots.end());
    out.roots.erase(std::unique(out.roots.begin(), out.roots.end()), out.roots.end());
    return out;
}

// ---------------------------------------------------------------------------
// Algebraic sweep

constexpr std::int64_t kResidueModulus = 64LL * 63 * 65 * 11;

const std::vector<bool>& square_residues()
{
    static const std::vector<bool> table = [] {
        std::vector<bool> t(static_cast<std::size_t>(kResidueModulus), false);
        for (std::int64_t x = 0; x < kResidueModulus; ++x) {
            t[static_cast<std::size_t>(x * x % kResidueModulus)] = true;
        }
        return t;
    }();
    return table;
}

std::int64_t residue(const Integer& z)
{
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(kResidueModulus));
    return static_cast<std::int64_t>(r.get_si());
}

std::int64_t residue(std::int64_t v)
{
    const std::int64_t r = v % kResidueModulus;
    return r < 0 ? r + kResidueModulus : r;
}

struct Sweep {
    bool swapped = false;  // sweep over y, solve for x
    int sdeg = 0;          // degree in the sweep variable
    int rdeg = 0;          // degree in the solved variable
    std::vector<std::vector<Integer>> coef;        // [sweep power][solved power]
    std::vector<std::vector<std::int64_t>> coef_mod;
};

Sweep make_sweep(const PlaneCurve& F)
{
    const PlaneCurve G = F.trimmed();
    const auto [bx, by] = G.bidegree();
    Sweep s;
    s.swapped = by > bx;
    s.sdeg = s.swapped ? by : bx;
    s.rdeg = s.swapped ? bx : by;
    Integer l = 1;
    for (const auto& c : G.coefficients()) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
    s.coef.assign(static_cast<std::size_t>(s.sdeg + 1), std::vector<Integer>(static_cast<std::size_t>(s.rdeg + 1), 0));
    s.coef_mod.assign(static_cast<std::size_t>(s.sdeg + 1),
                      std::vector<std::int64_t>(static_cast<std::size_t>(s.rdeg + 1), 0));
    const auto& exps = G.support().exponents();
    for (std::size_t i = 0; i < exps.size(); ++i) {
        const int h = s.swapped ? exps[i].k : exps[i].h;
        const int k = s.swapped ? exps[i].h : exps[i].k;
        const Rational& c = G.coefficients()[i];
        const auto hi = static_cast<std::size_t>(h);
        const auto ki = static_cast<std::size_t>(k);
        s.coef[hi][ki] = c.get_num() * (l / c.get_den());
        s.coef_mod[hi][ki] = residue(s.coef[hi][ki]);
    }
    return s;
}

struct AlgebraicChunk {
    std::vector<RationalPoint> points;
    std::vector<Rational> vertical;
};

class AlgebraicWorker {
public:
    AlgebraicWorker(const Sweep& sweep, const Integer& H, const AlgebraicOptions& options)
        : sweep_(sweep), H_(H), hb_(H), options_(options),
          fiber_(static_cast<std::size_t>(sweep.rdeg + 1)),
          apow_(static_cast<std::size_t>(sweep.sdeg + 1)), bpow_(static_cast<std::size_t>(sweep.sdeg + 1))
    {
    }

    void visit(std::int64_t a, std::int64_t b, AlgebraicChunk& out)
    {
        std::optional<Rational> sweep_value;
        if (!sweep_.swapped && (options_.domain.lo || options_.domain.hi)) {
            sweep_value = Rational(static_cast<long>(a), static_cast<unsigned long>(b));
            if (!options_.domain.contains(*sweep_value)) {
                return;
            }
        }
        if (sweep_.rdeg == 2 && rejected_by_residues(a, b)) {
            return;
        }
        const Integer az = big(a);
        const Integer bz = big(b);
        apow_[0] = 1;
        bpow_[0] = 1;
        for (std::size_t h = 1; h < apow_.size(); ++h) {
            apow_[h] = apow_[h - 1] * az;
            bpow_[h] = bpow_[h - 1] * bz;
        }
        const auto sdeg = static_cast<std::size_t>(sweep_.sdeg);
        for (std::size_t k = 0; k < fiber_.size(); ++k) {
            fiber_[k] = 0;
            for (std::size_t h = 0; h <= sdeg; ++h) {
                if (sweep_.coef[h][k] != 0) {
                    fiber_[k] += sweep_.coef[h][k] * apow_[h] * bpow_[sdeg - h];
                }
            }
        }
        FiberResult fr = solve_fiber(fiber_, H_, options_);
        if (!sweep_value) {
            sweep_value = Rational(static_cast<long>(a), static_cast<unsigned long>(b));
        }
        if (fr.vertical) {
            out.vertical.push_back(*sweep_value);
            fr.roots = enumerate_rationals(hb_);
        }
        for (auto& r : fr.roots) {
            RationalPoint p = sweep_.swapped ? RationalPoint{std::move(r), *sweep_value}
                                             : RationalPoint{*sweep_value, std::move(r)};
            if (accept(p)) {
                out.points.push_back(std::move(p));
            }
        }
    }

private:
    // Exact-arithmetic-free rejection: a genuine quadratic fiber whose
    // discriminant is a non-square modulo 64 * 63 * 65 * 11 has no rational root.
    bool rejected_by_residues(std::int64_t a, std::int64_t b) const
    {
        const std::int64_t am = residue(a);
        const std::int64_t bm = residue(b);
        std::int64_t ap[16];
        std::int64_t bp[16];
        const auto sdeg = static_cast<std::size_t>(sweep_.sdeg);
        if (sdeg >= 16) {
            return false;
        }
        ap[0] = bp[0] = 1;
        for (std::size_t h = 1; h <= sdeg; ++h) {
            ap[h] = ap[h - 1] * am % kResidueModulus;
            bp[h] = bp[h - 1] * bm % kResidueModulus;
        }
        std::int64_t c[3] = {0, 0, 0};
        for (std::size_t k = 0; k < 3; ++k) {
            for (std::size_t h = 0; h <= sdeg; ++h) {
                const std::int64_t m = sweep_.coef_mod[h][k];
                if (m != 0) {
                    c[k] = (c[k] + m * (ap[h] * bp[sdeg - h] % kResidueModulus)) % kResidueModulus;
                }
            }
        }
        if (c[2] == 0 || c[0] == 0) {
            return false;
        }
        const std::int64_t disc = residue(c[1] * c[1] % kResidueModulus - 4 * (c[2] * c[0] % kResidueModulus));
        return !square_residues()[static_cast<std::size_t>(disc)];
    }

    bool accept(const RationalPoint& p) const
    {
        if (!options_.domain.contains(p.x)) {
            return false;
        }
        return std::all_of(options_.where.begin(), options_.where.end(),
                           [&](const PlaneCurve& g) { return evaluate_curve(g, p) >= 0; });
    }

    const Sweep& sweep_;
    const Integer& H_;
    HeightBound hb_;
    const AlgebraicOptions& options_;
    IPoly fiber_;
    std::vector<Integer> apow_;
    std::vector<Integer> bpow_;
};

// ---------------------------------------------------------------------------
// Registry helpers

const std::string& param(const PfaffFamily& family, const std::string& key)
{
    const auto it = family.params.find(key);
    if (it == family.params.end()) {
        throw PreconditionError("family '" + family.name + "' needs parameter '" + key + "'");
    }
    return it->second;
}

// q = w^m with m maximal (w not a perfect power).
struct PerfectPower {
    Rational w;
    unsigned long m = 1;
};

PerfectPower perfect_power(const Rational& q)
{
    const Integer u = q.get_num();
    const Integer v = q.get_den();
    const auto bits = std::max(mpz_sizeinbase(u.get_mpz_t(), 2), mpz_sizeinbase(v.get_mpz_t(), 2));
    PerfectPower out{q, 1};
    for (unsigned long k = 2; k <= bits; ++k) {
        Integer ru;
        Integer rv;
        const bool eu = mpz_root(ru.get_mpz_t(), u.get_mpz_t(), k) != 0;
        const bool ev = mpz_root(rv.get_mpz_t(), v.get_mpz_t(), k) != 0;
        if (eu && ev) {
            out = PerfectPower{make_rational(ru, rv), k};
        }
    }
    return out;
}

Rational rational_pow(const Rational& w, long n)
{
    Rational base = n < 0 ? Rational(1) / w : w;
    unsigned long e = static_cast<unsigned long>(n < 0 ? -n : n);
    Integer num;
    Integer den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
    return make_rational(num, den);
}

Rational family_base(const PfaffFamily& family)
{
    if (family.name == "pow2") {
        return Rational(2);
    }
    const Rational q = parse_rational(param(family, "base"));
    if (q <= 0 || q == 1) {
        throw PreconditionError("powq: base must be a positive rational != 1");
    }
    return q;
}

Rational family_exponent(const PfaffFamily& family)
{
    const Rational e = parse_rational(param(family, "exponent"));
    if (e == 0) {
        throw PreconditionError("root: exponent must be nonzero");
    }
    return e;
}

void require_known(const PfaffFamily& family)
{
    static const char* const known[] = {"pow2", "exp", "powq", "root"};
    if (std::find(std::begin(known), std::end(known), family.name) == std::end(known)) {
        throw PreconditionError("unknown pfaff-exact family '" + family.name + "' (registry: pow2, exp, powq, root)");
    }
}

} // namespace

CensusRecord census_algebraic(const PlaneCurve& F, const Integer& H, const AlgebraicOptions& options)
{
    const auto t0 = Clock::now();
    const PlaneCurve G = F.trimmed();
    if (std::all_of(G.coefficients().begin(), G.coefficients().end(), [](const Rational& c) { return c == 0; })) {
        throw PreconditionError("census_algebraic: F must be nonzero");
    }
    const HeightBound hb(H);
    const std::int64_t h = hb.as_int64();
    const Sweep sweep = make_sweep(G);
    const auto jobs = static_cast<std::int64_t>(std::max(1, options.jobs));
    const std::int64_t chunk_count = std::min<std::int64_t>(h, jobs == 1 ? 1 : jobs * 16);
    const auto chunks = run_chunks<AlgebraicChunk>(static_cast<std::size_t>(chunk_count), options.jobs,
                                                   [&](std::size_t i) {
        const auto ii = static_cast<std::int64_t>(i);
        const std::int64_t b_first = ii * h / chunk_count + 1;
        const std::int64_t b_last = (ii + 1) * h / chunk_count;
        AlgebraicChunk out;
        AlgebraicWorker worker(sweep, H, options);
        for_each_rational_by_denominator(h, b_first, b_last,
                                         [&](std::int64_t a, std::int64_t b) { worker.visit(a, b, out); });
        return out;
    });
    CensusRecord rec;
    rec.H = H;
    rec.status = CensusStatus::exact;
    for (const auto& c : chunks) {
        rec.points.insert(rec.points.end(), c.points.begin(), c.points.end());
        rec.vertical.insert(rec.vertical.end(), c.vertical.begin(), c.vertical.end());
    }
    std::sort(rec.points.begin(), rec.points.end());
    rec.points.erase(std::unique(rec.points.begin(), rec.points.end()), rec.points.end());
    std::sort(rec.vertical.begin(), rec.vertical.end());
    rec.N = static_cast<std::int64_t>(rec.points.size());
    rec.seconds = seconds_since(t0);
    return rec;
}

std::string family_fact(const PfaffFamily& family)
{
    require_known(family);
    if (family.name == "pow2") {
        return "2^(a/b) with gcd(a,b)=1 is rational only for b=1, since 2 is not a perfect power";
    }
    if (family.name == "exp") {
        return "Hermite-Lindemann: e^x is transcendental for every algebraic x != 0";
    }
    if (family.name == "powq") {
        return "for rational w > 0, w != 1, not a perfect power, w^t (t rational) is rational only for integer t";
    }
    return "(a/b)^(p/q) with gcd(a,b)=gcd(p,q)=1 is rational iff a and b are perfect q-th powers";
}

OpenInterval family_domain(const PfaffFamily& family)
{
    require_known(family);
    OpenInterval d;
    if (family.name == "root") {
        d.lo = Rational(0);
    }
    return d;
}

std::optional<Rational> family_value(const PfaffFamily& family, const Rational& x)
{
    require_known(family);
    if (family.name == "exp") {
        return x == 0 ? std::optional<Rational>(Rational(1)) : std::nullopt;
    }
    if (family.name == "root") {
        if (x <= 0) {
            throw PreconditionError("root family: x must be positive");
        }
        const Rational e = family_exponent(family);
        const unsigned long q = e.get_den().get_ui();
        Integer s;
        Integer t;
        if (mpz_root(s.get_mpz_t(), x.get_num_mpz_t(), q) == 0 || mpz_root(t.get_mpz_t(), x.get_den_mpz_t(), q) == 0) {
            return std::nullopt;
        }
        return rational_pow(make_rational(s, t), e.get_num().get_si());
    }
    const PerfectPower pp = perfect_power(family_base(family));
    const Integer& b = x.get_den();
    if (b > big(static_cast<std::int64_t>(pp.m)) || pp.m % b.get_ui() != 0) {
        return std::nullopt;
    }
    const long n = x.get_num().get_si() * static_cast<long>(pp.m / b.get_ui());
    return rational_pow(pp.w, n);
}

PfaffianFunction family_function(const PfaffFamily& family)
{
    require_known(family);
    if (family.name == "pow2") {
        return chain_function(chains::exp2(), 1);
    }
    if (family.name == "exp") {
        return chain_function(chains::exp(), 1);
    }
    if (family.name == "powq") {
        return chain_function(chains::expq(family_base(family)), 1);
    }
    return chain_function(chains::power(family_exponent(family)), 2);
}

CensusRecord census_pfaff_exact(const PfaffFamily& family, const Integer& H, const XDomain& domain)
{
    const auto t0 = Clock::now();
    require_known(family);
    const HeightBound hb(H);
    CensusRecord rec;
    rec.H = H;
    rec.status = CensusStatus::exact;
    auto add = [&](Rational x, Rational y) {
        if (domain.contains(x) && height(x) <= H && height(y) <= H) {
            rec.points.push_back(RationalPoint{std::move(x), std::move(y)});
        }
    };
    if (family.name == "exp") {
        add(Rational(0), Rational(1));
    } else if (family.name == "root") {
        const Rational e = family_exponent(family);
        const unsigned long q = e.get_den().get_ui();
        const long p = e.get_num().get_si();
        const unsigned long ap = static_cast<unsigned long>(p < 0 ? -p : p);
        auto fits = [&](const Integer& s) {
            Integer sq;
            Integer sp;
            mpz_pow_ui(sq.get_mpz_t(), s.get_mpz_t(), q);
            mpz_pow_ui(sp.get_mpz_t(), s.get_mpz_t(), ap);
            return sq <= H && sp <= H;
        };
        for (Integer s = 1; fits(s); ++s) {
            for (Integer t = 1; fits(t); ++t) {
                Integer g;
                mpz_gcd(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t());
                if (g != 1) {
                    continue;
                }
                const Rational st = make_rational(s, t);
                add(rational_pow(st, static_cast<long>(q)), rational_pow(st, p));
            }
        }
    } else {
        const PerfectPower pp = perfect_power(family_base(family));
        const Integer hw = height(pp.w);
        long K = 0;
        for (Integer pw = hw; pw <= H; pw *= hw) {
            ++K;
        }
        for (unsigned long b = 1; b <= pp.m; ++b) {
            if (pp.m % b != 0 || big(static_cast<std::int64_t>(b)) > H) {
                continue;
            }
            const long step = static_cast<long>(pp.m / b);
            for (long a = -K / step; a <= K / step; ++a) {
                if (std::gcd(a < 0 ? -a : a, static_cast<long>(b)) != 1) {
                    continue;
                }
                add(Rational(a, b), rational_pow(pp.w, a * step));
            }
        }
    }
    std::sort(rec.points.begin(), rec.points.end());
    rec.N = static_cast<std::int64_t>(rec.points.size());
    rec.seconds = seconds_since(t0);
    return rec;
}

std::optional<PfaffFamily> registry_match(const PfaffianFunction& f)
{
    const auto& terms = f.polynomial().terms();
    if (terms.size() != 1 || !terms.begin()->second.is_rational() || terms.begin()->second.rational_value() != 1) {
        return std::nullopt;
    }
    const auto& exps = terms.begin()->first;
    int j = -1;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] == 1 && j < 0) {
            j = static_cast<int>(i);
        } else if (exps[i] != 0) {
            return std::nullopt;
        }
    }
    const auto& ev = f.chain().evaluator();
    const auto params = ev.parameters();
    if (ev.name() == "exp2" && j == 1) {
        return PfaffFamily{"pow2", {}};
    }
    const auto rate = params.find("rate");
    if (ev.name() == "exp" && j == 1 && (rate == params.end() || rate->second == "1")) {
        return PfaffFamily{"exp", {}};
    }
    if (ev.name() == "expq" && j == 1) {
        return PfaffFamily{"powq", {{"base", params.at("base")}}};
    }
    if (ev.name() == "power" && j == 2) {
        return PfaffFamily{"root", {{"exponent", params.at("exponent")}}};
    }
    return std::nullopt;
}

namespace {

struct NumericOutcome {
    enum class Kind { out, member, candidate, exhausted } kind = Kind::out;
    RationalPoint point;
};

NumericOutcome classify(const PfaffianFunction& f, const Rational& x, const HeightBound& hb,
                        const Rational& target, const NumericOptions& options)
{
    NumericOutcome out;
    std::optional<Interval> enc;
    for (Precision prec = options.precision.start; prec <= options.precision.max; prec *= 2) {
        try {
            Interval e = f.enclose(Interval(x, prec), prec);
            if (e.width().certainly_lt(Interval(target, prec))) {
                enc = std::move(e);
                break;
            }
        } catch (const PrecisionExhausted&) {
        }
    }
    if (!enc) {
        out.kind = NumericOutcome::Kind::exhausted;
        out.point.x = x;
        return out;
    }
    const auto ys = rationals_in_interval(enc->lo_rational(), enc->hi_rational(), hb);
    if (ys.empty()) {
        return out;
    }
    out.point = RationalPoint{x, ys.front()};
    if (enc->is_point()) {
        out.kind = NumericOutcome::Kind::member;
        return out;
    }
    if (options.registry) {
        const auto v = family_value(*options.registry, x);
        out.kind = v && *v == ys.front() ? NumericOutcome::Kind::member : NumericOutcome::Kind::out;
        return out;
    }
    out.kind = NumericOutcome::Kind::candidate;
    return out;
}

} // namespace

CensusRecord census_pfaff_numeric(const PfaffianFunction& f, const Rational& lo, const Rational& hi,
                                  const Integer& H, const NumericOptions& options)
{
    const auto t0 = Clock::now();
    if (options.precision.start < 2 || options.precision.max < options.precision.start) {
        throw PreconditionError("precision policy needs 2 <= start <= max");
    }
    const HeightBound hb(H);
    const Rational a = std::max(lo, Rational(-H));
    const Rational b = std::min(hi, Rational(H));
    std::vector<Rational> xs;
    if (a <= b) {
        for (auto& x : rationals_in_interval(a, b, hb)) {
            if (f.chain().domain().contains(x)) {
                xs.push_back(std::move(x));
            }
        }
    }
    const Rational target = Rational(1) / Rational(2 * H * H);
    const std::size_t per_chunk = 64;
    const std::size_t chunk_count = (xs.size() + per_chunk - 1) / per_chunk;
    const auto chunks = run_chunks<std::vector<NumericOutcome>>(chunk_count, options.jobs, [&](std::size_t i) {
        std::vector<NumericOutcome> out;
        const std::size_t end = std::min(xs.size(), (i + 1) * per_chunk);
        for (std::size_t k = i * per_chunk; k < end; ++k) {
            out.push_back(classify(f, xs[k], hb, target, options));
        }
        return out;
    });
    CensusRecord rec;
    rec.H = H;
    rec.status = CensusStatus::lower_bound_with_candidates;
    for (const auto& chunk : chunks) {
        for (const auto& o : chunk) {
            switch (o.kind) {
            case NumericOutcome::Kind::member:
                rec.points.push_back(o.point);
                break;
            case NumericOutcome::Kind::candidate:
                rec.candidates.push_back(o.point);
                break;
            case NumericOutcome::Kind::exhausted:
                rec.exhausted.push_back(o.point.x);
                break;
            case NumericOutcome::Kind::out:
                break;
            }
        }
    }
    rec.N = static_cast<std::int64_t>(rec.points.size());
    rec.seconds = seconds_since(t0);
    return rec;
}

} // namespace pfaffcount
