#pragma once

#include "pwl/rational.hpp"

#include <map>
#include <numbers>
#include <string>
#include <string_view>

namespace pwl {

/// Exact element of Q[pi, 1/pi]: a finite sum of rational multiples of
/// integer powers of pi. Since pi is transcendental the representation is
/// unique, so equality and zero tests are exact. Enough to carry the
/// coefficient formulas through exactly for coefficient sets like
/// a11 = -2/pi.
class PiLaurent {
public:
    PiLaurent() = default;
    PiLaurent(long value) : PiLaurent(Rational(value)) {}  // NOLINT(google-explicit-constructor)
    PiLaurent(const Rational& value);                      // NOLINT(google-explicit-constructor)

    static PiLaurent pi_power(int power, const Rational& coeff = 1);

    /// Parses products such as "1/40", "-2/pi", "pi/2", "3*pi^2", "0.05".
    static PiLaurent parse(std::string_view text);

    PiLaurent& operator+=(const PiLaurent& rhs);
    PiLaurent& operator-=(const PiLaurent& rhs);
    PiLaurent& operator*=(const PiLaurent& rhs);
    PiLaurent& operator/=(const Rational& rhs);

    friend PiLaurent operator+(PiLaurent a, const PiLaurent& b) { return a += b; }
    friend PiLaurent operator-(PiLaurent a, const PiLaurent& b) { return a -= b; }
    friend PiLaurent operator*(PiLaurent a, const PiLaurent& b) { return a *= b; }
    friend PiLaurent operator/(PiLaurent a, const Rational& b) { return a /= b; }
    friend PiLaurent operator/(PiLaurent a, long b) { return a /= Rational(b); }
    PiLaurent operator-() const;

    friend bool operator==(const PiLaurent& a, const PiLaurent& b) { return a.terms_ == b.terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    /// The value as a plain rational; DomainError if a pi power survives.
    Rational rational() const;

    double to_double() const;
    long double to_long_double() const;
    std::string to_string() const;

    const std::map<int, Rational>& terms() const { return terms_; }

private:
    void prune();
    std::map<int, Rational> terms_;  // pi power -> nonzero coefficient
};

template <class T>
T pi_constant();

template <>
inline double pi_constant<double>() {
    return std::numbers::pi;
}

template <>
inline long double pi_constant<long double>() {
    return std::numbers::pi_v<long double>;
}

template <>
inline PiLaurent pi_constant<PiLaurent>() {
    return PiLaurent::pi_power(1);
}

/// 1/pi in the same arithmetic.
template <class T>
T pi_inverse() {
    return T(1) / pi_constant<T>();
}

template <>
inline PiLaurent pi_inverse<PiLaurent>() {
    return PiLaurent::pi_power(-1);
}

inline double to_double(const PiLaurent& v) { return v.to_double(); }

}  // namespace pwl
