#include <algorithm>

#include "pfaffcount/cover.hpp"
#include "pfaffcount/errors.hpp"

namespace pfaffcount {

namespace {

constexpr Precision kPrec = 192;

Integer factorial(int k)
{
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
    return f;
}

Integer pow_integer(const Integer& base, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

struct Piece {
    RootEnclosure left;
    RootEnclosure right;
    bool small = false;
};

class Builder {
public:
    Builder(const PfaffianFunction& f, SubdivisionTree& tree, const RootOptions& options)
        : tree_(tree), options_(options)
    {
        for (int k = 0; k <= tree.D; ++k) {
            derivs_.push_back(k == 0 ? f : derivative(derivs_.back()));
        }
    }

    std::size_t build(const Rational& lo, const Rational& hi, int depth)
    {
        const std::size_t id = tree_.nodes.size();
        tree_.nodes.push_back(SubdivisionNode{lo, hi, depth, LeafKind::internal, {}, {}});
        const Interval nominal = tree_.nominal_length(depth);
        if (!Interval(hi - lo, kPrec).certainly_le(nominal)) {
            tree_.lengths_within_nominal = false;
        }
        const Rational short_len = Rational(1) / Rational(tree_.H * tree_.H);
        if (depth >= tree_.n || hi - lo < short_len) {
            tree_.nodes[id].kind = LeafKind::terminal_short;
            if (hi - lo >= short_len) {
                tree_.lengths_within_nominal = false;
            }
            return id;
        }

        std::vector<RootEnclosure> splits;
        for (int k = 2; k <= tree_.D; ++k) {
            const PfaffianFunction& dk = derivs_[static_cast<std::size_t>(k)];
            if (dk.polynomial().is_zero()) {
                continue;
            }
            const Interval t = tree_.threshold(k, depth);
            for (int sign : {1, -1}) {
                const DerivativeTower tower(dk, 3, sign > 0 ? t : -t);
                auto zs = isolate_zeros(tower, 0, lo, hi, options_);
                splits.insert(splits.end(), zs.begin(), zs.end());
            }
        }
        std::sort(splits.begin(), splits.end(),
                  [](const RootEnclosure& a, const RootEnclosure& b) { return a.lo < b.lo; });
        std::vector<RootEnclosure> merged;
        for (auto& z : splits) {
            if (!merged.empty() && z.lo <= merged.back().hi) {
                merged.back().hi = std::max(merged.back().hi, z.hi);
            } else {
                merged.push_back(z);
            }
        }
        tree_.nodes[id].splits = merged;

        std::vector<Piece> pieces;
        RootEnclosure left{lo, lo};
        for (const auto& z : merged) {
            if (z.hi <= lo || z.lo >= hi) {
                continue;
            }
            pieces.push_back(Piece{left, z, false});
            left = z;
        }
        pieces.push_back(Piece{left, RootEnclosure{hi, hi}, false});
        for (auto& p : pieces) {
            p.small = is_small(p, depth);
        }

        // Maximal runs of equal kind become children.
        std::size_t i = 0;
        std::vector<std::size_t> children;
        while (i < pieces.size()) {
            std::size_t j = i;
            while (j + 1 < pieces.size() && pieces[j + 1].small == pieces[i].small) {
                ++j;
            }
            const bool small = pieces[i].small;
            Rational clo = small ? pieces[i].left.hi : pieces[i].left.lo;
            Rational chi = small ? pieces[j].right.lo : pieces[j].right.hi;
            clo = std::max(clo, lo);
            chi = std::min(chi, hi);
            if (small) {
                const std::size_t leaf = tree_.nodes.size();
                tree_.nodes.push_back(SubdivisionNode{clo, chi, depth, LeafKind::small_derivative, {}, {}});
                children.push_back(leaf);
            } else if (clo == lo && chi == hi) {
                // Hypotheses violated: no small piece shrinks the interval. Halve it.
                tree_.lengths_within_nominal = false;
                const Rational mid = simplest_rational_between(lo + (hi - lo) / 4, hi - (hi - lo) / 4);
                children.push_back(build(lo, mid, depth + 1));
                children.push_back(build(mid, hi, depth + 1));
            } else if (clo < chi) {
                children.push_back(build(clo, chi, depth + 1));
            }
            i = j + 1;
        }
        tree_.nodes[id].children = std::move(children);
        if (tree_.nodes[id].children.size() == 1 &&
            tree_.nodes[tree_.nodes[id].children.front()].kind == LeafKind::small_derivative) {
            // The whole interval is small: the node itself is the leaf.
            tree_.nodes.pop_back();
            tree_.nodes[id].children.clear();
            tree_.nodes[id].kind = LeafKind::small_derivative;
        }
        return id;
    }

private:
    bool is_small(const Piece& p, int depth) const
    {
        Rational q;
        if (p.left.hi < p.right.lo) {
            const Rational quarter = (p.right.lo - p.left.hi) / 4;
            q = simplest_rational_between(p.left.hi + quarter, p.right.lo - quarter);
        } else {
            q = p.left.hi;
        }
        for (int k = 2; k <= tree_.D; ++k) {
            const PfaffianFunction& dk = derivs_[static_cast<std::size_t>(k)];
            if (dk.polynomial().is_zero()) {
                continue;
            }
            const Interval t = tree_.threshold(k, depth);
            const DerivativeTower above(dk, 0, t);
            const DerivativeTower below(dk, 0, -t);
            if (above.point_sign(0, q, options_.max_bits) > 0 || below.point_sign(0, q, options_.max_bits) < 0) {
                return false;
            }
        }
        return true;
    }

    SubdivisionTree& tree_;
    const RootOptions& options_;
    std::vector<PfaffianFunction> derivs_;
};

} // namespace

std::string to_string(LeafKind kind)
{
    switch (kind) {
    case LeafKind::internal:
        return "internal";
    case LeafKind::small_derivative:
        return "small-derivative";
    case LeafKind::terminal_short:
        return "terminal-short";
    }
    return "?";
}

std::size_t SubdivisionTree::leaf_count() const
{
    return static_cast<std::size_t>(
        std::count_if(nodes.begin(), nodes.end(), [](const SubdivisionNode& n) { return n.kind != LeafKind::internal; }));
}

std::size_t SubdivisionTree::small_leaf_count() const
{
    return static_cast<std::size_t>(std::count_if(
        nodes.begin(), nodes.end(), [](const SubdivisionNode& n) { return n.kind == LeafKind::small_derivative; }));
}

Integer SubdivisionTree::recurrence_leaf_bound() const
{
    return pow_integer(Integer(2), static_cast<unsigned long>(n + 1)) - 1;
}

Interval SubdivisionTree::nominal_length(int depth) const
{
    return pow(lambda, static_cast<unsigned long>(depth)) * Interval(L, kPrec);
}

Interval SubdivisionTree::threshold(int kappa, int depth) const
{
    const Interval len = nominal_length(depth);
    Interval t = Interval::from_integer(factorial(kappa), kPrec) * pow(a_root, static_cast<unsigned long>(kappa));
    if (kappa > 1) {
        t /= pow(len, static_cast<unsigned long>(kappa - 1));
    }
    return t;
}

int subdivision_depth(const Rational& rho, const Rational& L, const Integer& H)
{
    if (rho <= 0) {
        throw PreconditionError("subdivision_depth: rho must be positive");
    }
    const Rational lh2 = L * Rational(H * H);
    if (lh2 < 1) {
        throw PreconditionError("subdivision_depth: L >= 1/H^2 fails");
    }
    // lambda^n < 1/(L H^2)  <=>  4^{n q} > (L H^2)^p  for rho = p/q.
    const unsigned long p = rho.get_num().get_ui();
    const unsigned long q = rho.get_den().get_ui();
    Rational rhs;
    mpz_pow_ui(rhs.get_num_mpz_t(), lh2.get_num_mpz_t(), p);
    mpz_pow_ui(rhs.get_den_mpz_t(), lh2.get_den_mpz_t(), p);
    int n = 1;
    while (Rational(pow_integer(Integer(4), static_cast<unsigned long>(n) * q)) <= rhs) {
        ++n;
    }
    return n;
}

SubdivisionTree threshold_subdivision(const PfaffianFunction& f, const Rational& a, const Rational& b,
                                      const MonomialSet& M, const Integer& H, const RootOptions& options)
{
    const auto params = parameters(M);
    if (params.D < 2) {
        throw PreconditionError("threshold_subdivision: need D >= 2");
    }
    if (!(a < b)) {
        throw PreconditionError("threshold_subdivision: need a < b");
    }
    const Rational L = b - a;
    if (L * Rational(H * H) < 1) {
        throw PreconditionError("threshold_subdivision: L >= 1/H^2 fails");
    }
    const auto slopes = slope_trichotomy(f, a, b, options);
    if (slopes.size() != 1 || slopes.front().label != SlopeLabel::middle) {
        throw PreconditionError("threshold_subdivision: |f'| <= 1 fails on the interval");
    }

    SubdivisionTree tree;
    tree.D = params.D;
    tree.rho = *params.rho;
    tree.H = H;
    tree.L = L;
    const Interval four(4L, kPrec);
    const Interval four_root = pow(four, Rational(1) / tree.rho);
    tree.a_root = Interval(static_cast<long>(2 * params.D), kPrec) * four_root;
    tree.lambda = Interval(1L, kPrec) / four_root;
    tree.n = subdivision_depth(tree.rho, L, H);
    Builder builder(f, tree, options);
    builder.build(a, b, 0);
    return tree;
}

bool check_small_leaf(const PfaffianFunction& f, const SubdivisionTree& tree, std::size_t node, int samples)
{
    const auto& leaf = tree.nodes.at(node);
    if (leaf.kind != LeafKind::small_derivative) {
        throw PreconditionError("check_small_leaf: node is not a small-derivative leaf");
    }
    const int depth = leaf.depth;
    std::vector<PfaffianFunction> derivs{derivative(f)};
    for (int k = 2; k <= tree.D; ++k) {
        derivs.push_back(derivative(derivs.back()));
    }
    const Rational width = leaf.hi - leaf.lo;
    for (int i = 0; i < samples; ++i) {
        const Rational x = leaf.lo + width * make_rational(2 * i + 1, 2 * samples);
        for (int k = 1; k <= tree.D; ++k) {
            const Interval v = abs(derivs[static_cast<std::size_t>(k - 1)].enclose(Interval(x, kPrec), kPrec));
            if (!v.certainly_le(tree.threshold(k, depth))) {
                return false;
            }
        }
    }
    return true;
}

} // namespace pfaffcount
