#include "pwl/model.hpp"

#include "pwl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pwl {

const char* to_string(Zone z) { return z == Zone::plus ? "plus" : "minus"; }

ZoneField zone_field(const PWLCoefficients& c, Zone zone) {
    if (zone == Zone::plus)
        return {{c.a01, c.a11, c.a21}, {c.b01, c.b11, c.b21}, {c.a02, c.a12, c.a22}, {c.b02, c.b12, c.b22}};
    return {{c.alpha01, c.alpha11, c.alpha21},
            {c.beta01, c.beta11, c.beta21},
            {c.alpha02, c.alpha12, c.alpha22},
            {c.beta02, c.beta12, c.beta22}};
}

namespace {

// -(p0 cos + q0 sin) - r/2 (px + qy) - r/2 ((px - qy) cos 2t + (py + qx) sin 2t)
TrigPolySeries first_order_series(double p0, double px, double py, double q0, double qx, double qy) {
    TrigPolySeries s;
    s.add(0, 1, -p0, -q0);
    s.add(1, 0, -0.5 * (px + qy));
    s.add(1, 2, -0.5 * (px - qy), -0.5 * (py + qx));
    return s;
}

}  // namespace

PolarSeries polar_first_order(const PWLCoefficients& c) {
    return {first_order_series(c.a01, c.a11, c.a21, c.b01, c.b11, c.b21),
            first_order_series(c.alpha01, c.alpha11, c.alpha21, c.beta01, c.beta11, c.beta21)};
}

bool satisfies_vanishing_delta1(const ExactPWLCoefficients& c) {
    const auto r = vanishing_delta1_residuals(c);
    return r.linear.is_zero() && r.sine.is_zero() && r.cosine.is_zero();
}

bool satisfies_vanishing_delta1(const PWLCoefficients& c) {
    const auto r = vanishing_delta1_residuals(c);
    constexpr double ulp = std::numeric_limits<double>::epsilon();
    const double linear_scale = std::abs(c.a11) + std::abs(c.b21) + std::abs(c.alpha11) + std::abs(c.beta21);
    const double sine_scale = std::abs(c.b01) + std::abs(c.beta01);
    const double cosine_scale = std::abs(c.a01) + std::abs(c.alpha01);
    return std::abs(r.linear) <= 64 * ulp * linear_scale && std::abs(r.sine) <= 64 * ulp * sine_scale &&
           std::abs(r.cosine) <= 64 * ulp * cosine_scale;
}

PolarSeries polar_second_order(const PWLCoefficients& c) {
    if (!satisfies_vanishing_delta1(c))
        throw ConditionViolation("second-order polar tables require a11 = -(b21+alpha11+beta21), b01 = beta01, a01 = alpha01");

    const double a02 = c.a02, a12 = c.a12, a21 = c.a21, a22 = c.a22;
    const double b02 = c.b02, b11 = c.b11, b12 = c.b12, b21 = c.b21, b22 = c.b22;
    const double al01 = c.alpha01, al02 = c.alpha02, al11 = c.alpha11, al12 = c.alpha12, al21 = c.alpha21, al22 = c.alpha22;
    const double be01 = c.beta01, be02 = c.beta02, be11 = c.beta11, be12 = c.beta12, be21 = c.beta21, be22 = c.beta22;
    const double sq = al11 + be21;

    PolarSeries out;

    // F2 = (1/r) f21 + f22 + r f23 in the zone y >= x^3
    {
        const double c202 = -al01 * be01;
        const double s202 = 0.5 * (al01 * al01 - be01 * be01);
        const double c211 = 0.5 * (-2 * a02 + a21 * al01 - b11 * al01 + al11 * be01 + be01 * be21);
        const double s211 = 0.5 * (a21 * be01 - 2 * b02 - b11 * be01 - al01 * al11 - al01 * be21);
        const double c213 = 0.5 * (-a21 * al01 - b11 * al01 + 2 * b21 * be01 + al11 * be01 + be01 * be21);
        const double s213 = 0.5 * (-a21 * be01 - b11 * be01 - 2 * b21 * al01 - al01 * al11 - al01 * be21);
        const double c220 = 0.25 * (-2 * a12 - a21 * al11 - a21 * be21 + b11 * al11 + b11 * be21 - 2 * b22);
        const double c222 = 0.5 * (-a12 - a21 * b21 + b11 * b21 + b11 * al11 + b11 * be21 + b22);
        const double s222 = 0.25 * (a21 * a21 - 2 * a22 - b11 * b11 - 2 * b12 + 2 * b21 * al11 + 2 * b21 * be21 + sq * sq);
        const double c224 = 0.25 * (a21 + b11) * (2 * b21 + al11 + be21);
        const double s224 = 0.125 * (-a21 * a21 - 2 * a21 * b11 - b11 * b11 + (2 * b21 + sq) * (2 * b21 + sq));
        TrigPolySeries& s = out.plus;
        s.add(-1, 2, c202, s202);
        s.add(0, 1, c211, s211);
        s.add(0, 3, c213, s213);
        s.add(1, 0, c220);
        s.add(1, 2, c222, s222);
        s.add(1, 4, c224, s224);
    }
    // zone y <= x^3
    {
        const double c202 = -al01 * be01;
        const double s202 = 0.5 * (al01 * al01 - be01 * be01);
        const double c211 = 0.5 * (al01 * al21 - al01 * be11 - 2 * al02 - al11 * be01 - be01 * be21);
        const double s211 = 0.5 * (al01 * sq + al21 * be01 - be01 * be11 - 2 * be02);
        const double c213 = 0.5 * (be01 * (be21 - al11) - al01 * (al21 + be11));
        const double s213 = 0.5 * (al01 * (al11 - be21) - be01 * (al21 + be11));
        const double c220 = 0.25 * (al11 * al21 - al11 * be11 - 2 * al12 + al21 * be21 - be11 * be21 - 2 * be22);
        const double c222 = 0.5 * (-al11 * be11 - al12 - al21 * be21 + be22);
        const double s222 = 0.25 * (al11 * al11 + al21 * al21 - 2 * al22 - be11 * be11 - 2 * be12 - be21 * be21);
        const double c224 = -0.25 * (al11 - be21) * (al21 + be11);
        const double s224 = 0.125 * (al11 * al11 - 2 * al11 * be21 - al21 * al21 - 2 * al21 * be11 - be11 * be11 + be21 * be21);
        TrigPolySeries& s = out.minus;
        s.add(-1, 2, c202, s202);
        s.add(0, 1, c211, s211);
        s.add(0, 3, c213, s213);
        s.add(1, 0, c220);
        s.add(1, 2, c222, s222);
        s.add(1, 4, c224, s224);
    }
    return out;
}

PolarExpansion polar_expansion(const PWLCoefficients& c, Zone zone, double theta, double r) {
    if (r <= 0.0) throw DomainError("polar expansion needs r > 0");
    const ZoneField f = zone_field(c, zone);
    const double ct = std::cos(theta), st = std::sin(theta);
    const double x = r * ct, y = r * st;
    // r' = eps (cos P + sin Q), theta' = -1 + eps (cos Q - sin P)/r; expand r'/theta'.
    const double radial1 = ct * f.p1(x, y) + st * f.q1(x, y);
    const double angular1 = ct * f.q1(x, y) - st * f.p1(x, y);
    const double radial2 = ct * f.p2(x, y) + st * f.q2(x, y);
    return {-radial1, -radial2 - radial1 * angular1 / r};
}

double evaluate_series(const TrigPolySeries& s, double theta, double r) { return s.evaluate(theta, r); }

}  // namespace pwl
