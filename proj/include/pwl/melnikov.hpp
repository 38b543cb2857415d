#pragma once

#include "pwl/coefficients.hpp"
#include "pwl/errors.hpp"
#include "pwl/model.hpp"
#include "pwl/nonsmooth_system.hpp"
#include "pwl/ratpoly.hpp"

#include <array>
#include <optional>

namespace pwl {

// ---------------------------------------------------------------------------
// Generic engine

struct MelnikovOptions {
    double abs_tol = 1e-10;            // per segment, outer integrals
    bool check_first_order = false;    // melnikov2: warn on std::clog if |Delta_1(x)| > first_order_tol
    double first_order_tol = 1e-8;
};

/// Delta_1(x) = integral_0^T F_1(s, x) ds, piecewise over the switching slabs.
Vec melnikov1(const NonsmoothSystem& sys, const Vec& x, const MelnikovOptions& opt = {});

struct SecondOrderParts {
    Vec f2;
    Vec f2_star;
    Vec total() const { return f2 + f2_star; }
};

/// f2 (averaged part, inner integral co-integrated) and f2* (jump term).
SecondOrderParts melnikov2_parts(const NonsmoothSystem& sys, const Vec& x, const MelnikovOptions& opt = {});
Vec melnikov2(const NonsmoothSystem& sys, const Vec& x, const MelnikovOptions& opt = {});
Vec f2_star(const NonsmoothSystem& sys, const Vec& x, const MelnikovOptions& opt = {});

// ---------------------------------------------------------------------------
// Cubic-switched piecewise-linear family

enum class SecondOrderSource {
    automatic,   // Fourier tables when the vanishing conditions hold, chain rule otherwise
    tables,      // Fourier tables; ConditionViolation otherwise
    chain_rule,  // straight from the Cartesian field
};

/// d = 1 system in the radius r with T = 2 pi, switches theta_1(r) and
/// theta_1(r) + pi, pieces minus / plus / minus. F_1 comes from
/// polar_first_order with its analytic r-derivative.
NonsmoothSystem paper_family_system(const PWLCoefficients& c,
                                    SecondOrderSource source = SecondOrderSource::automatic);

template <class T>
struct GammaCoeffs {
    T gamma0{}, gamma1{}, gamma2{};
    friend bool operator==(const GammaCoeffs&, const GammaCoeffs&) = default;
};

/// gamma0 = -2(b01 - beta01), gamma1 = -pi/2 (a11 + b21 + alpha11 + beta21),
/// gamma2 = 2(a01 - alpha01).
template <class T>
GammaCoeffs<T> gamma_coeffs(const BasicPWLCoefficients<T>& c) {
    const T pi = pi_constant<T>();
    return {T(-2) * (c.b01 - c.beta01), T(0) - pi * (c.a11 + c.b21 + c.alpha11 + c.beta21) / 2,
            T(2) * (c.a01 - c.alpha01)};
}

/// (gamma0 cos theta1 + gamma1 r + gamma2 sin theta1) / (2 pi).
double delta1_closed(const GammaCoeffs<double>& g, double r);

/// Canonical preimage: b01 = -gamma0/2, a11 = -2 gamma1/pi, a01 = gamma2/2.
template <class T>
BasicPWLCoefficients<T> invert_gammas(const GammaCoeffs<T>& g) {
    BasicPWLCoefficients<T> c;
    c.b01 = T(0) - g.gamma0 / 2;
    c.a11 = T(0) - T(2) * g.gamma1 * pi_inverse<T>();
    c.a01 = g.gamma2 / 2;
    return c;
}

/// gamma0 + gamma1 (x + x^5) + gamma2 x^2. Double inputs are taken at their
/// shortest decimal spelling; exact inputs must be rational (DomainError).
RatPoly p1_poly(const GammaCoeffs<double>& g);
RatPoly p1_poly(const GammaCoeffs<PiLaurent>& g);

template <class T>
struct BasicDelta2Coeffs {
    T delta1{}, delta2{}, delta3{}, delta4{}, delta5{};
    T mu1{}, mu2{}, mu3{};
    T eta1{}, eta2{}, eta3{};
};
using Delta2Coeffs = BasicDelta2Coeffs<double>;

template <class T>
void require_vanishing_delta1(const BasicPWLCoefficients<T>& c) {
    if (!satisfies_vanishing_delta1(c))
        throw ConditionViolation("coefficients violate a11 = -(b21+alpha11+beta21), b01 = beta01, a01 = alpha01");
}

template <class T>
BasicDelta2Coeffs<T> delta2_coeffs(const BasicPWLCoefficients<T>& c) {
    require_vanishing_delta1(c);
    const T pi = pi_constant<T>();
    const T a02 = c.a02, a12 = c.a12, a21 = c.a21, b02 = c.b02, b11 = c.b11, b21 = c.b21, b22 = c.b22;
    const T al01 = c.alpha01, al02 = c.alpha02, al11 = c.alpha11, al12 = c.alpha12, al21 = c.alpha21;
    const T be01 = c.beta01, be02 = c.beta02, be11 = c.beta11, be21 = c.beta21, be22 = c.beta22;
    const T two(2), four(4);
    BasicDelta2Coeffs<T> d;
    d.delta1 = T(0) - pi *
                          (two * a12 + two * b22 + a21 * al11 - b11 * al11 + two * al12 - al11 * al21 + al11 * be11 +
                           a21 * be21 - b11 * be21 - al21 * be21 + be11 * be21 + two * be22) /
                          4;
    d.delta2 = two * (T(0) - b02 + two * b21 * al01 + a21 * be01 - al21 * be01 + be02 - two * al01 * be21);
    d.delta3 =
        two * (a02 + b11 * al01 - al02 - two * b21 * be01 - four * al11 * be01 - al01 * be11 - two * be01 * be21);
    const T mixed = T(0) - two * a21 - two * b11 + two * al21 + two * be11;
    d.delta4 = al01 * (T(0) - four * b21 - four * al11) + be01 * mixed;
    d.delta5 = (four * b21 + four * al11) * be01 + al01 * mixed;
    d.mu1 = pi * (al11 + be21);
    d.mu2 = T(-4) * be01;
    d.mu3 = four * al01;
    d.eta1 = two * (be21 - b21);
    d.eta2 = four * (al11 + b21);
    d.eta3 = two * (al21 + be11 - a21 - b11);
    return d;
}

/// Printed-scale pieces at r: f2 = delta1 r + delta2 c + delta3 s + delta4 c^3
/// + delta5 s^3, and f2* = r^2 c^2 / (2 + 6 r^2 c s) (mu1 r + mu2 c + mu3 s)
/// (eta1 + eta2 c^2 + eta3 c s), c = cos theta1(r), s = sin theta1(r).
struct ClosedSecondOrder {
    double f2 = 0.0;
    double f2_star = 0.0;
};
ClosedSecondOrder delta2_closed_parts(const Delta2Coeffs& d, double r);

/// (f2 + f2*) / (2 pi).
double delta2_closed(const Delta2Coeffs& d, double r);

struct LambdaCoeffs {
    std::array<double, 8> value{};
    std::optional<std::array<Rational, 8>> exact;
};

template <class T>
std::array<T, 8> lambda_values(const BasicPWLCoefficients<T>& c) {
    require_vanishing_delta1(c);
    const T pi = pi_constant<T>();
    const T a02 = c.a02, a12 = c.a12, a21 = c.a21, b02 = c.b02, b11 = c.b11, b21 = c.b21, b22 = c.b22;
    const T al01 = c.alpha01, al02 = c.alpha02, al11 = c.alpha11, al12 = c.alpha12, al21 = c.alpha21;
    const T be01 = c.beta01, be02 = c.beta02, be11 = c.beta11, be21 = c.beta21, be22 = c.beta22;
    const T two(2), three(3), four(4), eight(8);
    const T sq = al11 + be21;
    std::array<T, 8> l;
    l[0] = T(-8) * pi * (a12 + b22 + al12 + (a21 - al21) * sq + be22);
    l[1] = eight * (three * be02 - three * b02 + four * b21 * al01 + three * a21 * be01 - three * al21 * be01 -
                    four * al01 * be21);
    l[2] = T(24) * (a02 - a21 * al01 - al02 + al01 * al21 - two * be01 * sq);
    l[3] = eight * pi * sq * sq;
    l[4] = T(-8) * (b02 + b11 * be01 - be02 - be01 * be11 + two * al01 * sq);
    l[5] = eight * (a02 + b11 * al01 - al02 - al01 * be11 - four * be01 * (b21 + two * al11 + be21));
    l[6] = four * pi * sq * (b21 + two * al11 + be21);
    l[7] = T(0) - pi * (two * a12 + two * b22 + (a21 - b11 - al21 + be11) * sq + two * (al12 + be22));
    return l;
}

/// ConditionViolation unless the vanishing conditions hold.
LambdaCoeffs lambda_coeffs(const PWLCoefficients& c);
/// Also fills `exact` when every lambda is rational.
LambdaCoeffs lambda_coeffs(const ExactPWLCoefficients& c);

/// sum lambda_k u_k with u = [x^5, x^4, x^6, x^7, 1, x^2, x^3 - x^7, x + 3x^9].
/// Uses the exact lambdas when present, else the shortest decimals of the doubles.
RatPoly p2_poly(const LambdaCoeffs& l);
RatPoly p2_poly(const std::array<Rational, 8>& l);

}  // namespace pwl
