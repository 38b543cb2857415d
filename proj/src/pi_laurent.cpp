#include "pwl/pi_laurent.hpp"

#include "pwl/errors.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <vector>

namespace pwl {

PiLaurent::PiLaurent(const Rational& value) {
    if (value != 0) terms_[0] = value;
}

PiLaurent PiLaurent::pi_power(int power, const Rational& coeff) {
    PiLaurent p;
    if (coeff != 0) p.terms_[power] = coeff;
    return p;
}

void PiLaurent::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0)
            it = terms_.erase(it);
        else
            ++it;
    }
}

PiLaurent& PiLaurent::operator+=(const PiLaurent& rhs) {
    for (const auto& [k, c] : rhs.terms_) terms_[k] += c;
    prune();
    return *this;
}

PiLaurent& PiLaurent::operator-=(const PiLaurent& rhs) {
    for (const auto& [k, c] : rhs.terms_) terms_[k] -= c;
    prune();
    return *this;
}

PiLaurent& PiLaurent::operator*=(const PiLaurent& rhs) {
    std::map<int, Rational> out;
    for (const auto& [i, a] : terms_)
        for (const auto& [j, b] : rhs.terms_) out[i + j] += a * b;
    terms_ = std::move(out);
    prune();
    return *this;
}

PiLaurent& PiLaurent::operator/=(const Rational& rhs) {
    if (rhs == 0) throw DomainError("division by zero");
    for (auto& [k, c] : terms_) c /= rhs;
    return *this;
}

PiLaurent PiLaurent::operator-() const {
    PiLaurent r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

bool PiLaurent::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

Rational PiLaurent::rational() const {
    if (!is_rational()) throw DomainError("value " + to_string() + " is not rational");
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

double PiLaurent::to_double() const { return static_cast<double>(to_long_double()); }

long double PiLaurent::to_long_double() const {
    long double sum = 0.0L;
    for (const auto& [k, c] : terms_)
        sum += pwl::to_long_double(c) * std::pow(std::numbers::pi_v<long double>, static_cast<long double>(k));
    return sum;
}

std::string PiLaurent::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [k, c] = *it;
        Rational mag = abs(c);
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        if (k == 0) {
            out += pwl::to_string(mag);
            continue;
        }
        std::string pi_text = "pi";
        if (std::abs(k) != 1) pi_text += "^" + std::to_string(std::abs(k));
        const mpz_class& num = mag.get_num();
        const mpz_class& den = mag.get_den();
        if (k > 0) {
            if (num != 1) out += num.get_str() + "*";
            out += pi_text;
            if (den != 1) out += "/" + den.get_str();
        } else {
            out += num.get_str() + "/";
            if (den != 1)
                out += "(" + den.get_str() + "*" + pi_text + ")";
            else
                out += pi_text;
        }
    }
    return out;
}

namespace {

PiLaurent parse_factor(std::string_view tok, std::string_view whole) {
    if (tok.substr(0, 2) == "pi") {
        int power = 1;
        if (tok.size() > 2) {
            if (tok[2] != '^') throw ParseError("malformed pi factor in '" + std::string(whole) + "'");
            std::string_view p = tok.substr(3);
            auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), power);
            if (ec != std::errc() || ptr != p.data() + p.size())
                throw ParseError("malformed pi exponent in '" + std::string(whole) + "'");
        }
        return PiLaurent::pi_power(power);
    }
    return PiLaurent(parse_rational(tok));
}

}  // namespace

PiLaurent PiLaurent::parse(std::string_view text) {
    std::string compact;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
    std::string_view s = compact;
    if (s.empty()) throw ParseError("empty coefficient literal");
    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    // Split on '*' and '/' (exponent signs in decimals are never preceded by
    // these operators, so a plain scan suffices).
    std::vector<std::pair<char, std::string_view>> factors;
    char op = '*';
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == '*' || s[i] == '/') {
            std::string_view tok = s.substr(start, i - start);
            if (tok.empty()) throw ParseError("malformed coefficient literal '" + std::string(text) + "'");
            factors.emplace_back(op, tok);
            if (i < s.size()) op = s[i];
            start = i + 1;
        }
    }
    PiLaurent value(1L);
    for (const auto& [fop, tok] : factors) {
        PiLaurent f = parse_factor(tok, text);
        if (fop == '*') {
            value *= f;
        } else if (f.is_rational()) {
            value /= f.rational();
        } else if (f.terms().size() == 1) {
            const auto& [k, c] = *f.terms().begin();
            value *= PiLaurent::pi_power(-k, Rational(1) / c);
        } else {
            throw ParseError("cannot divide by a sum in '" + std::string(text) + "'");
        }
    }
    return negative ? -value : value;
}

}  // namespace pwl
