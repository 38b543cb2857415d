#include "pwl/ratpoly.hpp"

#include "pwl/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace pwl {

RatPoly::RatPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    for (auto& c : coeffs_) c.canonicalize();
    normalize();
}

RatPoly::RatPoly(std::initializer_list<long> coeffs) {
    for (long c : coeffs) coeffs_.emplace_back(c);
    normalize();
}

RatPoly RatPoly::constant(const Rational& c) { return RatPoly(std::vector<Rational>{c}); }

RatPoly RatPoly::monomial(int degree, const Rational& c) {
    if (degree < 0) throw DomainError("negative monomial degree");
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return RatPoly(std::move(v));
}

void RatPoly::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RatPoly::coeff(int k) const {
    if (k < 0 || k > degree()) return 0;
    return coeffs_[k];
}

const Rational& RatPoly::leading() const {
    if (is_zero()) throw ZeroPolynomial("leading coefficient of the zero polynomial");
    return coeffs_.back();
}

RatPoly RatPoly::derivative() const {
    if (degree() < 1) return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
    return RatPoly(std::move(d));
}

Rational RatPoly::evaluate(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double RatPoly::evaluate(double x) const { return to_double(evaluate(rational_from_double(x))); }

double RatPoly::evaluate_approx(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_double(*it);
    return acc;
}

RatPoly& RatPoly::operator+=(const RatPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
    normalize();
    return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
    normalize();
    return *this;
}

RatPoly& RatPoly::operator*=(const RatPoly& rhs) {
    if (is_zero() || rhs.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<Rational> out(coeffs_.size() + rhs.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
    coeffs_ = std::move(out);
    normalize();
    return *this;
}

RatPoly& RatPoly::operator*=(const Rational& rhs) {
    for (auto& c : coeffs_) c *= rhs;
    normalize();
    return *this;
}

RatPoly RatPoly::operator-() const {
    RatPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

std::pair<RatPoly, RatPoly> RatPoly::divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw ZeroPolynomial("division by the zero polynomial");
    if (a.degree() < b.degree()) return {RatPoly{}, a};
    std::vector<Rational> rem = a.coeffs_;
    std::vector<Rational> quot(a.degree() - b.degree() + 1);
    const Rational& lead = b.coeffs_.back();
    const int db = b.degree();
    for (int k = a.degree() - db; k >= 0; --k) {
        const Rational q = rem[k + db] / lead;
        quot[k] = q;
        if (q == 0) continue;
        for (int j = 0; j <= db; ++j) rem[k + j] -= q * b.coeffs_[j];
    }
    rem.resize(db);
    return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
}

RatPoly RatPoly::exact_divide(const RatPoly& a, const RatPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw DomainError("polynomial division is not exact");
    return q;
}

RatPoly RatPoly::monic() const {
    if (is_zero()) return {};
    RatPoly r = *this;
    const Rational inv = 1 / Rational(coeffs_.back());
    r *= inv;
    return r;
}

RatPoly RatPoly::gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        RatPoly r = divmod(a, b).second;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

RatPoly RatPoly::squarefree_part() const {
    if (is_zero()) throw ZeroPolynomial("squarefree part of the zero polynomial");
    if (degree() == 0) return RatPoly::constant(1);
    return exact_divide(*this, gcd(*this, derivative())).monic();
}

std::string RatPoly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (int k = 0; k <= degree(); ++k) {
        const Rational& c = coeffs_[k];
        if (c == 0) continue;
        const Rational mag_q = first ? c : Rational(abs(c));
        if (!first) out += c < 0 ? " - " : " + ";
        std::string mono = k == 0 ? "" : k == 1 ? "x" : "x^" + std::to_string(k);
        if (k > 0 && (mag_q == 1 || mag_q == -1))
            out += (mag_q < 0 ? "-" : "") + mono;
        else
            out += pwl::to_string(mag_q) + (k > 0 ? "*" + mono : "");
        first = false;
    }
    return out;
}

namespace {

std::string strip_spaces(std::string_view s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

void add_term(std::vector<Rational>& acc, std::string_view term, bool negative, std::string_view whole) {
    if (term.empty()) throw ParseError("empty term in polynomial '" + std::string(whole) + "'");
    Rational coeff = 1;
    int power = 0;
    const auto xpos = term.find('x');
    std::string_view coeff_text = term;
    if (xpos != std::string_view::npos) {
        coeff_text = term.substr(0, xpos);
        std::string_view rest = term.substr(xpos + 1);
        power = 1;
        if (!rest.empty()) {
            if (rest.front() != '^') throw ParseError("expected '^' after x in '" + std::string(whole) + "'");
            rest.remove_prefix(1);
            auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), power);
            if (ec != std::errc() || ptr != rest.data() + rest.size() || power < 0)
                throw ParseError("malformed exponent in '" + std::string(whole) + "'");
        }
        if (!coeff_text.empty()) {
            if (coeff_text.back() != '*') throw ParseError("expected '*' before x in '" + std::string(whole) + "'");
            coeff_text.remove_suffix(1);
            if (coeff_text.empty()) throw ParseError("missing coefficient before '*' in '" + std::string(whole) + "'");
        }
    }
    if (!coeff_text.empty()) coeff = parse_rational(coeff_text);
    if (negative) coeff = -coeff;
    if (power > 100000) throw ParseError("exponent too large in '" + std::string(whole) + "'");
    if (acc.size() <= static_cast<std::size_t>(power)) acc.resize(power + 1);
    acc[power] += coeff;
}

}  // namespace

RatPoly RatPoly::parse(std::string_view text) {
    const std::string s = strip_spaces(text);
    if (s.empty()) throw ParseError("empty polynomial");
    std::vector<Rational> acc;
    std::size_t start = 0;
    bool negative = false;
    if (s[0] == '+' || s[0] == '-') {
        negative = s[0] == '-';
        start = 1;
    }
    for (std::size_t i = start; i <= s.size(); ++i) {
        const bool at_end = i == s.size();
        const bool sign = !at_end && (s[i] == '+' || s[i] == '-') && i > start && s[i - 1] != 'e' && s[i - 1] != 'E' &&
                          s[i - 1] != '^';
        if (at_end || sign) {
            add_term(acc, std::string_view(s).substr(start, i - start), negative, text);
            if (!at_end) {
                negative = s[i] == '-';
                start = i + 1;
            }
        }
    }
    return RatPoly(std::move(acc));
}

}  // namespace pwl
