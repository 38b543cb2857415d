#include "pwl/chebyshev.hpp"

#include "pwl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace pwl {

RatPoly wronskian(const std::vector<RatPoly>& basis, int k) {
    if (k < 0 || k >= static_cast<int>(basis.size()))
        throw DomainError("Wronskian index " + std::to_string(k) + " outside basis of size " +
                          std::to_string(basis.size()));
    const int n = k + 1;
    // m[row = derivative order][col = basis element]
    std::vector<std::vector<RatPoly>> m(n, std::vector<RatPoly>(n));
    for (int j = 0; j < n; ++j) {
        RatPoly d = basis[j];
        for (int i = 0; i < n; ++i) {
            m[i][j] = d;
            d = d.derivative();
        }
    }
    int sign = 1;
    RatPoly prev = RatPoly::constant(1);
    for (int p = 0; p < n - 1; ++p) {
        if (m[p][p].is_zero()) {
            int swap_row = -1;
            for (int i = p + 1; i < n; ++i)
                if (!m[i][p].is_zero()) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0) return {};
            std::swap(m[p], m[swap_row]);
            sign = -sign;
        }
        for (int i = p + 1; i < n; ++i) {
            for (int j = p + 1; j < n; ++j)
                m[i][j] = RatPoly::exact_divide(m[i][j] * m[p][p] - m[i][p] * m[p][j], prev);
            m[i][p] = {};
        }
        prev = m[p][p];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

namespace {

std::vector<RatPoly> sturm_chain(const RatPoly& q) {
    std::vector<RatPoly> chain{q, q.derivative()};
    while (!chain.back().is_zero()) {
        RatPoly r = -RatPoly::divmod(chain[chain.size() - 2], chain.back()).second;
        if (r.is_zero()) break;
        // Positive rescaling keeps the signs and the coefficients small.
        r *= 1 / Rational(abs(r.leading()));
        chain.push_back(std::move(r));
    }
    if (chain.back().is_zero()) chain.pop_back();
    return chain;
}

int sign_of(const Rational& v) { return sgn(v); }

int sign_at_infinity(const RatPoly& p, bool positive) {
    const int s = sgn(p.leading());
    return (positive || p.degree() % 2 == 0) ? s : -s;
}

int variations(const std::vector<int>& signs) {
    int count = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

int variations_at(const std::vector<RatPoly>& chain, const std::optional<Rational>& x, bool upper) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& p : chain) signs.push_back(x ? sign_of(p.evaluate(*x)) : sign_at_infinity(p, upper));
    return variations(signs);
}

int count_with_chain(const std::vector<RatPoly>& chain, const std::optional<Rational>& lo,
                     const std::optional<Rational>& hi) {
    return variations_at(chain, lo, false) - variations_at(chain, hi, true);
}

}  // namespace

int sturm_count(const RatPoly& p, const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
    if (p.is_zero()) throw ZeroPolynomial("sturm_count of the zero polynomial");
    if (lo && hi && !(*lo < *hi)) throw DomainError("sturm_count needs lo < hi");
    if (p.degree() == 0) return 0;
    return count_with_chain(sturm_chain(p.squarefree_part()), lo, hi);
}

std::vector<IsolatedRoot> isolate_roots(const RatPoly& p, const std::optional<Rational>& lo,
                                        const std::optional<Rational>& hi) {
    if (p.is_zero()) throw ZeroPolynomial("isolate_roots of the zero polynomial");
    if (lo && hi && !(*lo < *hi)) throw DomainError("isolate_roots needs lo < hi");
    std::vector<IsolatedRoot> out;
    if (p.degree() == 0) return out;
    const RatPoly q = p.squarefree_part();
    const std::vector<RatPoly> chain = sturm_chain(q);

    // Cauchy bound: every root has |x| < bound.
    Rational bound = 0;
    for (int k = 0; k < q.degree(); ++k) bound = std::max(bound, Rational(abs(q.coeff(k) / q.leading())));
    bound += 1;
    // Dyadic bound so that bisection midpoints stay dyadic and hit small
    // integer or dyadic roots exactly.
    {
        Rational pow2 = 1;
        while (pow2 < bound) pow2 *= 2;
        bound = pow2;
    }
    Rational a = lo ? std::max(*lo, Rational(-bound)) : Rational(-bound);
    Rational b = hi ? std::min(*hi, bound) : bound;
    if (!(a < b)) return out;

    auto count = [&](const Rational& l, const Rational& h) { return count_with_chain(chain, l, h); };
    auto refine = [&](Rational l, Rational h) {
        // exactly one root in (l, h]
        const int sign_h = sgn(q.evaluate(h));
        if (sign_h == 0) return IsolatedRoot{h, h, to_double(h)};
        for (int it = 0; it < 2000; ++it) {
            const Rational width = h - l;
            const double mag = std::max(std::abs(to_double(l)), std::abs(to_double(h)));
            if (to_double(width) <= std::min(1e-12, 1e-15 * std::max(1.0, mag))) break;
            Rational mid = (l + h) / 2;
            const int sm = sgn(q.evaluate(mid));
            if (sm == 0) return IsolatedRoot{mid, mid, to_double(mid)};
            if (sm == sign_h)
                h = mid;
            else
                l = mid;
        }
        return IsolatedRoot{l, h, to_double((l + h) / 2)};
    };

    std::function<void(const Rational&, const Rational&, int)> split = [&](const Rational& l, const Rational& h,
                                                                          int n) {
        if (n == 0) return;
        if (n == 1) {
            out.push_back(refine(l, h));
            return;
        }
        const Rational mid = (l + h) / 2;
        split(l, mid, count(l, mid));
        split(mid, h, count(mid, h));
    };
    split(a, b, count(a, b));
    return out;
}

const char* to_string(EctClass c) {
    switch (c) {
        case EctClass::ECT: return "ECT";
        case EctClass::ECT_ACCURACY_1: return "ECT_ACCURACY_1";
        case EctClass::NEITHER: return "NEITHER";
    }
    return "?";
}

EctVerdict ect_classify(const std::vector<RatPoly>& basis, const Rational& a, const Rational& b) {
    if (basis.empty()) throw DomainError("ect_classify needs a nonempty basis");
    if (!(a < b)) throw DomainError("ect_classify needs a < b");
    EctVerdict v;
    const int n = static_cast<int>(basis.size()) - 1;
    RatPoly last;
    for (int k = 0; k <= n; ++k) {
        const RatPoly w = wronskian(basis, k);
        if (w.is_zero()) {
            v.root_counts.push_back(-1);
            continue;
        }
        int c = sturm_count(w, a, b);
        if (w.evaluate(b) == 0) --c;  // open at b
        v.root_counts.push_back(c);
        if (k == n) last = w;
    }
    const bool leading_clean =
        std::all_of(v.root_counts.begin(), v.root_counts.end() - 1, [](int c) { return c == 0; });
    if (leading_clean && v.root_counts.back() == 0) {
        v.classification = EctClass::ECT;
    } else if (leading_clean && v.root_counts.back() == 1) {
        const RatPoly g = RatPoly::gcd(last, last.derivative());
        int repeated = g.degree() > 0 ? sturm_count(g, a, b) : 0;
        if (g.degree() > 0 && g.evaluate(b) == 0) --repeated;
        v.last_root_simple = repeated == 0;
        v.classification = v.last_root_simple ? EctClass::ECT_ACCURACY_1 : EctClass::NEITHER;
    }
    return v;
}

std::vector<RatPoly> prop1_basis() { return {RatPoly{1}, RatPoly{0, 1, 0, 0, 0, 1}, RatPoly{0, 0, 1}}; }

std::vector<RatPoly> prop2_basis() {
    return {RatPoly::monomial(5),
            RatPoly::monomial(4),
            RatPoly::monomial(6),
            RatPoly::monomial(7),
            RatPoly::constant(1),
            RatPoly::monomial(2),
            RatPoly::monomial(3) - RatPoly::monomial(7),
            RatPoly::monomial(1) + RatPoly::monomial(9, 3)};
}

std::vector<RatPoly> basis_from_spec(const std::string& spec) {
    if (spec == "prop1") return prop1_basis();
    if (spec == "prop2") return prop2_basis();
    std::vector<RatPoly> out;
    std::size_t start = 0;
    while (start <= spec.size()) {
        const std::size_t end = std::min(spec.find(';', start), spec.size());
        out.push_back(RatPoly::parse(std::string_view(spec).substr(start, end - start)));
        start = end + 1;
    }
    if (out.empty()) throw ParseError("empty basis");
    return out;
}

}  // namespace pwl
