#pragma once

#include "pwl/pi_laurent.hpp"

#include <json.hpp>

#include <array>
#include <string_view>

namespace pwl {

/// The 24 perturbation coefficients of the cubic-switched piecewise-linear
/// family. Suffix digit = order in eps, middle digit = monomial (0: 1,
/// 1: x, 2: y). In the zone y >= x^3 the x-equation carries the a's and the
/// y-equation the b's; in y <= x^3 the x-equation carries the alphas and the
/// y-equation the betas:
///
///   xdot = y + sum_i eps^i (a0i + a1i x + a2i y),   ydot = -x + sum_i eps^i (b0i + b1i x + b2i y)
///   xdot = y + sum_i eps^i (alpha0i + ...),         ydot = -x + sum_i eps^i (beta0i + ...)
template <class T>
struct BasicPWLCoefficients {
    // order 1
    T a01{}, a11{}, a21{};
    T b01{}, b11{}, b21{};
    T alpha01{}, alpha11{}, alpha21{};
    T beta01{}, beta11{}, beta21{};
    // order 2
    T a02{}, a12{}, a22{};
    T b02{}, b12{}, b22{};
    T alpha02{}, alpha12{}, alpha22{};
    T beta02{}, beta12{}, beta22{};

    friend bool operator==(const BasicPWLCoefficients&, const BasicPWLCoefficients&) = default;
};

using PWLCoefficients = BasicPWLCoefficients<double>;
using ExactPWLCoefficients = BasicPWLCoefficients<PiLaurent>;

template <class T>
struct CoefficientField {
    std::string_view name;
    int order;
    T BasicPWLCoefficients<T>::*member;
};

template <class T>
constexpr std::array<CoefficientField<T>, 24> coefficient_fields() {
    using C = BasicPWLCoefficients<T>;
    return {{
        {"a01", 1, &C::a01},         {"a11", 1, &C::a11},         {"a21", 1, &C::a21},
        {"b01", 1, &C::b01},         {"b11", 1, &C::b11},         {"b21", 1, &C::b21},
        {"alpha01", 1, &C::alpha01}, {"alpha11", 1, &C::alpha11}, {"alpha21", 1, &C::alpha21},
        {"beta01", 1, &C::beta01},   {"beta11", 1, &C::beta11},   {"beta21", 1, &C::beta21},
        {"a02", 2, &C::a02},         {"a12", 2, &C::a12},         {"a22", 2, &C::a22},
        {"b02", 2, &C::b02},         {"b12", 2, &C::b12},         {"b22", 2, &C::b22},
        {"alpha02", 2, &C::alpha02}, {"alpha12", 2, &C::alpha12}, {"alpha22", 2, &C::alpha22},
        {"beta02", 2, &C::beta02},   {"beta12", 2, &C::beta12},   {"beta22", 2, &C::beta22},
    }};
}

template <class T>
BasicPWLCoefficients<T> operator+(BasicPWLCoefficients<T> a, const BasicPWLCoefficients<T>& b) {
    for (const auto& f : coefficient_fields<T>()) a.*(f.member) = a.*(f.member) + b.*(f.member);
    return a;
}

PWLCoefficients to_double(const ExactPWLCoefficients& exact);

/// Throws DomainError if any field is NaN or infinite.
void validate(const PWLCoefficients& c);

/// Reads `{"order1": {...}, "order2": {...}}`; keys are the field names,
/// missing keys are zero. Values may be JSON numbers (taken at their
/// shortest decimal spelling) or strings such as "-2/pi" or "1/40".
/// Throws ParseError on unknown keys or malformed values.
ExactPWLCoefficients exact_coefficients_from_json(const nlohmann::json& j);
PWLCoefficients coefficients_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PWLCoefficients& c);
nlohmann::json to_json(const ExactPWLCoefficients& c);

}  // namespace pwl
