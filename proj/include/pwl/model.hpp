#pragma once

#include "pwl/coefficients.hpp"
#include "pwl/trig_series.hpp"

#include <cmath>

namespace pwl {

enum class Zone { plus, minus };  ///< plus: y >= x^3, minus: y <= x^3

const char* to_string(Zone z);

/// c + cx*x + cy*y
struct AffineForm {
    double constant = 0.0;
    double x = 0.0;
    double y = 0.0;
    double operator()(double px, double py) const { return constant + x * px + y * py; }
};

/// Perturbation polynomials of one zone, split by order in eps:
/// xdot = y + eps*p1 + eps^2*p2, ydot = -x + eps*q1 + eps^2*q2.
struct ZoneField {
    AffineForm p1, q1, p2, q2;
};

ZoneField zone_field(const PWLCoefficients& c, Zone zone);

/// Polar right-hand sides of dr/dtheta in the two zones.
struct PolarSeries {
    TrigPolySeries plus;
    TrigPolySeries minus;
};

/// First-order coefficient F1 of dr/dtheta = eps F1 + eps^2 F2 + O(eps^3)
/// in both zones. Uses the order-1 block only.
PolarSeries polar_first_order(const PWLCoefficients& c);

/// F2 in both zones, assembled from the Fourier constant tables that hold
/// once the vanishing first-order conditions are imposed. Throws
/// ConditionViolation if `c` does not satisfy them.
PolarSeries polar_second_order(const PWLCoefficients& c);

/// F1 and F2 at a point, computed straight from the Cartesian field by the
/// chain rule (theta taken as independent variable). Independent of the
/// tables used by polar_first_order/polar_second_order.
struct PolarExpansion {
    double first = 0.0;
    double second = 0.0;
};
PolarExpansion polar_expansion(const PWLCoefficients& c, Zone zone, double theta, double r);

double evaluate_series(const TrigPolySeries& s, double theta, double r);

/// The three quantities that must vanish for the first-order Melnikov
/// function to be identically zero: a11 + b21 + alpha11 + beta21,
/// b01 - beta01, a01 - alpha01.
template <class T>
struct VanishingResiduals {
    T linear, sine, cosine;
};

template <class T>
VanishingResiduals<T> vanishing_delta1_residuals(const BasicPWLCoefficients<T>& c) {
    return {c.a11 + c.b21 + c.alpha11 + c.beta21, c.b01 - c.beta01, c.a01 - c.alpha01};
}

/// Exact test for exact coefficients.
bool satisfies_vanishing_delta1(const ExactPWLCoefficients& c);

/// Floating test: each residual must be within 64 ulp of the magnitude of
/// the summands that produced it.
bool satisfies_vanishing_delta1(const PWLCoefficients& c);

/// Returns a copy with a11 := -(b21 + alpha11 + beta21), b01 := beta01,
/// a01 := alpha01.
template <class T>
BasicPWLCoefficients<T> apply_vanishing_delta1(BasicPWLCoefficients<T> c) {
    c.a11 = T(0) - (c.b21 + c.alpha11 + c.beta21);
    c.b01 = c.beta01;
    c.a01 = c.alpha01;
    return c;
}

}  // namespace pwl
