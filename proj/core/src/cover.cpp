#include "pfaffcount/cover.hpp"

#include <algorithm>

#include "pfaffcount/errors.hpp"

namespace pfaffcount {

namespace {

std::vector<Integer> integer_row(const std::vector<Rational>& row)
{
    Integer l = 1;
    for (const auto& q : row) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    }
    std::vector<Integer> out;
    out.reserve(row.size());
    for (const auto& q : row) {
        out.push_back(q.get_num() * (l / q.get_den()));
    }
    return out;
}

std::vector<Integer> primitive(std::vector<Rational> v)
{
    std::vector<Integer> z = integer_row(v);
    Integer g = 0;
    for (const auto& e : z) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
    }
    int sign = 0;
    for (const auto& e : z) {
        if (e != 0) {
            sign = sgn(e);
            break;
        }
    }
    if (g != 0) {
        for (auto& e : z) {
            e /= g;
            if (sign < 0) {
                e = -e;
            }
        }
    }
    return z;
}

// Incremental row echelon form over Q for the greedy sweep.
class Echelon {
public:
    explicit Echelon(std::size_t width) : width_(width) {}

    std::size_t rank() const { return rows_.size(); }

    /// Reduced remainder of `row`; all zero when it is in the span.
    std::vector<Rational> reduce(std::vector<Rational> row) const
    {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const std::size_t p = pivots_[i];
            if (row[p] != 0) {
                const Rational factor = row[p] / rows_[i][p];
                for (std::size_t j = p; j < width_; ++j) {
                    row[j] -= factor * rows_[i][j];
                }
            }
        }
        return row;
    }

    void insert(std::vector<Rational> reduced)
    {
        const auto it = std::find_if(reduced.begin(), reduced.end(), [](const Rational& q) { return q != 0; });
        if (it == reduced.end()) {
            return;
        }
        const auto p = static_cast<std::size_t>(it - reduced.begin());
        for (auto& r : rows_) {
            if (r[p] != 0) {
                const Rational factor = r[p] / reduced[p];
                for (std::size_t j = 0; j < width_; ++j) {
                    r[j] -= factor * reduced[j];
                }
            }
        }
        rows_.push_back(std::move(reduced));
        pivots_.push_back(p);
    }

    std::vector<Integer> kernel() const
    {
        std::vector<bool> is_pivot(width_, false);
        for (auto p : pivots_) {
            is_pivot[p] = true;
        }
        const auto free_it = std::find(is_pivot.begin(), is_pivot.end(), false);
        const auto f = static_cast<std::size_t>(free_it - is_pivot.begin());
        std::vector<Rational> x(width_, Rational(0));
        x[f] = 1;
        // Rows are fully reduced: x_p = -row[f] / row[p].
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            x[pivots_[i]] = -rows_[i][f] / rows_[i][pivots_[i]];
        }
        return primitive(std::move(x));
    }

    void clear()
    {
        rows_.clear();
        pivots_.clear();
    }

private:
    std::size_t width_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<std::size_t> pivots_;
};

PlaneCurve curve_from_kernel(const MonomialSet& M, const std::vector<Integer>& kernel)
{
    std::vector<Rational> coeffs;
    coeffs.reserve(kernel.size());
    for (const auto& z : kernel) {
        coeffs.emplace_back(z);
    }
    return PlaneCurve(M, std::move(coeffs));
}

} // namespace

RankResult exact_rank(const std::vector<std::vector<Rational>>& rows)
{
    const std::size_t width = rows.empty() ? 0 : rows.front().size();
    std::vector<std::vector<Integer>> a;
    a.reserve(rows.size());
    for (const auto& row : rows) {
        if (row.size() != width) {
            throw PreconditionError("exact_rank: rows have different lengths");
        }
        a.push_back(integer_row(row));
    }
    const std::size_t m = a.size();
    std::vector<std::size_t> pivots;
    Integer prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < width && r < m; ++c) {
        std::size_t i = r;
        while (i < m && a[i][c] == 0) {
            ++i;
        }
        if (i == m) {
            continue;
        }
        std::swap(a[i], a[r]);
        for (std::size_t k = r + 1; k < m; ++k) {
            for (std::size_t j = c + 1; j < width; ++j) {
                a[k][j] = (a[r][c] * a[k][j] - a[k][c] * a[r][j]);
                mpz_divexact(a[k][j].get_mpz_t(), a[k][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[k][c] = 0;
        }
        prev = a[r][c];
        pivots.push_back(c);
        ++r;
    }
    RankResult result;
    result.rank = r;
    if (r < width) {
        std::vector<bool> is_pivot(width, false);
        for (auto p : pivots) {
            is_pivot[p] = true;
        }
        const auto f = static_cast<std::size_t>(std::find(is_pivot.begin(), is_pivot.end(), false) - is_pivot.begin());
        std::vector<Rational> x(width, Rational(0));
        x[f] = 1;
        for (std::size_t k = r; k-- > 0;) {
            const std::size_t p = pivots[k];
            Rational acc = 0;
            for (std::size_t j = p + 1; j < width; ++j) {
                if (x[j] != 0) {
                    acc += Rational(a[k][j]) * x[j];
                }
            }
            x[p] = -acc / Rational(a[k][p]);
        }
        result.kernel = primitive(std::move(x));
    }
    return result;
}

CoverReport block_cover(const std::vector<RationalPoint>& points, const MonomialSet& M, const Integer& H)
{
    const std::size_t D = M.size();
    if (D < 2) {
        throw PreconditionError("block_cover: need D >= 2");
    }
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (!(points[i - 1] < points[i])) {
            throw PreconditionError("block_cover: points must be distinct and sorted by (x, y)");
        }
    }
    CoverReport report{M, H, {}, std::nullopt};
    Echelon echelon(D);
    std::vector<std::size_t> current;
    auto close = [&] {
        report.blocks.push_back(CoverBlock{current, curve_from_kernel(M, echelon.kernel())});
        current.clear();
        echelon.clear();
    };
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto reduced = echelon.reduce(monomial_row(M, points[i]));
        const bool independent = std::any_of(reduced.begin(), reduced.end(), [](const Rational& q) { return q != 0; });
        if (independent && echelon.rank() + 1 == D) {
            close();
            reduced = monomial_row(M, points[i]);
        }
        echelon.insert(std::move(reduced));
        current.push_back(i);
    }
    if (!current.empty()) {
        close();
    }
    return report;
}

bool cover_is_sound(const CoverReport& report, const std::vector<RationalPoint>& points)
{
    std::size_t next = 0;
    for (const auto& block : report.blocks) {
        if (!(block.curve.support() == report.M)) {
            return false;
        }
        for (auto idx : block.points) {
            if (idx != next++ || idx >= points.size()) {
                return false;
            }
            if (evaluate_curve(block.curve, points[idx]) != 0) {
                return false;
            }
        }
    }
    return next == points.size();
}

Interval lemma21_bound(const MonomialSet& M, const Interval& L, const Integer& H)
{
    const auto p = parameters(M);
    if (p.D < 2) {
        throw PreconditionError("lemma21_bound: D >= 2 fails (D = " + std::to_string(p.D) + ")");
    }
    if (p.S < 2 * p.R) {
        throw PreconditionError("lemma21_bound: S >= 2R fails (S = " + std::to_string(p.S) +
                                ", R = " + std::to_string(p.R) + ")");
    }
    if (H < 1) {
        throw PreconditionError("lemma21_bound: H >= 1 fails");
    }
    constexpr Precision prec = 192;
    const Interval inv_h2(Rational(1, 1) / Rational(H * H), prec);
    if (L.certainly_lt(inv_h2)) {
        throw PreconditionError("lemma21_bound: L >= 1/H^2 fails");
    }
    const Rational& rho = *p.rho;
    const Interval four(4L, prec);
    Interval prefactor = Interval(*p.C_upper, prec) * Interval(static_cast<long>(p.D), prec) * four *
                         pow(four, Rational(1) / rho);
    prefactor += Interval(2L, prec);
    return prefactor * pow(L, rho) * pow(Interval::from_integer(H, prec), *p.sigma);
}

Interval lemma21_bound(const MonomialSet& M, const Rational& L, const Integer& H)
{
    return lemma21_bound(M, Interval(L, 192), H);
}

CoverVerification verify_cover(const std::vector<RationalPoint>& points, const MonomialSet& M, const Interval& L,
                               const Integer& H)
{
    CoverVerification v{false, block_cover(points, M, H)};
    v.report.bound = lemma21_bound(M, L, H);
    const Interval count(static_cast<long>(v.report.blocks.size()), 64);
    v.ok = cover_is_sound(v.report, points) && count.certainly_le(*v.report.bound);
    return v;
}

} // namespace pfaffcount
