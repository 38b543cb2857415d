#include "pwl/rational.hpp"

#include "pwl/errors.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>

namespace pwl {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw ParseError("malformed integer in '" + std::string(whole) + "'");
    mpz_class z(std::string(s), 10);
    return negative ? mpz_class(-z) : z;
}

mpz_class pow10(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
        std::string_view exp_text = s.substr(epos + 1);
        s = s.substr(0, epos);
        if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
        auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
        if (ec != std::errc() || ptr != exp_text.data() + exp_text.size() || exp_text.empty())
            throw ParseError("malformed exponent in '" + std::string(whole) + "'");
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = s.substr(0, dot);
        std::string_view frac_part = s.substr(dot + 1);
        if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
            (!frac_part.empty() && !all_digits(frac_part)))
            throw ParseError("malformed number '" + std::string(whole) + "'");
        digits = std::string(int_part) + std::string(frac_part);
        exponent -= static_cast<long>(frac_part.size());
    } else {
        if (!all_digits(s)) throw ParseError("malformed number '" + std::string(whole) + "'");
        digits = std::string(s);
    }
    mpz_class mantissa(digits, 10);
    if (negative) mantissa = -mantissa;
    Rational q;
    if (exponent >= 0) {
        q = Rational(mantissa * pow10(static_cast<unsigned long>(exponent)));
    } else {
        q = Rational(mantissa, pow10(static_cast<unsigned long>(-exponent)));
    }
    q.canonicalize();
    return q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) throw ParseError("empty rational literal");
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        mpz_class num = parse_integer(trim(s.substr(0, slash)), text);
        mpz_class den = parse_integer(trim(s.substr(slash + 1)), text);
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    return parse_decimal(s, text);
}

Rational rational_from_double(double value) {
    if (!std::isfinite(value)) throw DomainError("cannot convert non-finite value to a rational");
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc()) throw DomainError("double formatting failed");
    return parse_decimal(std::string_view(buf.data(), static_cast<std::size_t>(ptr - buf.data())), "");
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {
// 40 significant digits then strtod/strtold: round-to-nearest, unlike mpq_get_d which truncates.
std::string decimal_text(const Rational& q) {
    mpf_class f(q, 192);
    mp_exp_t exponent = 0;
    std::string digits = f.get_str(exponent, 10, 40);
    bool negative = !digits.empty() && digits.front() == '-';
    if (negative) digits.erase(0, 1);
    return std::string(negative ? "-" : "") + "0." + digits + "e" + std::to_string(exponent);
}
}  // namespace

double to_double(const Rational& q) {
    if (q == 0) return 0.0;
    return std::strtod(decimal_text(q).c_str(), nullptr);
}

long double to_long_double(const Rational& q) {
    if (q == 0) return 0.0L;
    return std::strtold(decimal_text(q).c_str(), nullptr);
}

}  // namespace pwl
