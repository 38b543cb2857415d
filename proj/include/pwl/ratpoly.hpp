#pragma once

#include "pwl/rational.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pwl {

/// Dense univariate polynomial over Q, ascending coefficients. The zero
/// polynomial has no coefficients; otherwise the leading one is nonzero.
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rational> coeffs);
    RatPoly(std::initializer_list<long> coeffs);

    static RatPoly constant(const Rational& c);
    static RatPoly monomial(int degree, const Rational& c = 1);
    static RatPoly x() { return monomial(1); }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(int k) const;
    const Rational& leading() const;

    RatPoly derivative() const;
    Rational evaluate(const Rational& x) const;
    /// Exact evaluation rounded once to double.
    double evaluate(double x) const;
    /// Horner in double on the rounded coefficients.
    double evaluate_approx(double x) const;

    RatPoly& operator+=(const RatPoly& rhs);
    RatPoly& operator-=(const RatPoly& rhs);
    RatPoly& operator*=(const RatPoly& rhs);
    RatPoly& operator*=(const Rational& rhs);
    friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
    friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
    friend RatPoly operator*(RatPoly a, const RatPoly& b) { return a *= b; }
    friend RatPoly operator*(RatPoly a, const Rational& b) { return a *= b; }
    friend RatPoly operator*(const Rational& b, RatPoly a) { return a *= b; }
    RatPoly operator-() const;
    friend bool operator==(const RatPoly&, const RatPoly&) = default;

    /// Euclidean division; ZeroPolynomial if b is zero.
    static std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
    /// a / b when the remainder is zero; DomainError otherwise.
    static RatPoly exact_divide(const RatPoly& a, const RatPoly& b);
    /// Monic gcd (zero if both are zero).
    static RatPoly gcd(RatPoly a, RatPoly b);

    RatPoly monic() const;
    /// p / gcd(p, p'), monic.
    RatPoly squarefree_part() const;

    /// "c0 + c1*x + c2*x^2" with rational "p/q" coefficients; zero terms
    /// omitted, negative ones written with " - ". The zero polynomial is "0".
    std::string to_string() const;
    /// Accepts the format above, plus bare "x", "x^k", "-x", decimals.
    /// ParseError on malformed text.
    static RatPoly parse(std::string_view text);

private:
    void normalize();
    std::vector<Rational> coeffs_;
};

}  // namespace pwl
