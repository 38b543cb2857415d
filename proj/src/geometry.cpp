#include "pwl/geometry.hpp"

#include "pwl/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace pwl {

namespace {

// Newton safeguarded by a sign bracket. f is monotone on [lo, hi] with a
// sign change; `increasing` gives its direction.
template <class F>
double bracketed_newton(F f, double lo, double hi, double x, bool increasing) {
    for (int it = 0; it < 200; ++it) {
        const auto [v, dv] = f(x);
        if (v == 0.0) return x;
        if ((v > 0.0) == increasing)
            hi = x;
        else
            lo = x;
        double next = x - v / dv;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 2e-16 * std::max(1.0, std::abs(x)) || hi - lo <= 4e-16 * std::max(1.0, hi))
            return next;
        x = next;
    }
    return x;
}

}  // namespace

SwitchingAngle solve_theta1(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("solve_theta1 needs r > 0, got " + std::to_string(r));
    const double r2 = r * r;
    constexpr double half_pi = std::numbers::pi / 2;
    double c, s, theta;
    if (r <= 1.0) {
        auto g = [r2](double t) {
            const double ct = std::cos(t), st = std::sin(t);
            return std::pair{st - r2 * ct * ct * ct, ct + 3 * r2 * ct * ct * st};
        };
        theta = bracketed_newton(g, 0.0, half_pi, std::atan(r2), true);
        c = std::cos(theta);
        s = std::sin(theta);
    } else {
        // u = pi/2 - theta keeps cos(theta) = sin(u) accurate near pi/2.
        auto h = [r2](double u) {
            const double su = std::sin(u), cu = std::cos(u);
            return std::pair{cu - r2 * su * su * su, -su - 3 * r2 * su * su * cu};
        };
        const double u = bracketed_newton(h, 0.0, half_pi, std::asin(std::pow(r2, -1.0 / 3.0)), false);
        theta = half_pi - u;
        c = std::sin(u);
        s = std::cos(u);
    }
    SwitchingAngle a;
    a.r = r;
    a.theta1 = theta;
    a.theta2 = theta + std::numbers::pi;
    a.dtheta1_dr = 2 * r * c * c / (1 + 3 * r2 * c * s);
    return a;
}

double r_of_x(double x) {
    if (!(x >= 0.0)) throw DomainError("r_of_x needs x >= 0");
    const double x2 = x * x;
    return x * std::sqrt(1.0 + x2 * x2);
}

double x_of_r(double r) {
    if (!(r >= 0.0)) throw DomainError("x_of_r needs r >= 0");
    if (r == 0.0) return 0.0;
    // s = x^2 solves s^3 + s = r^2; Newton from above is monotone (convex, increasing).
    const double r2 = r * r;
    double s = std::min(r2, std::cbrt(r2));
    for (int it = 0; it < 200; ++it) {
        const double step = (s * s * s + s - r2) / (3 * s * s + 1);
        if (!(step > 0.0)) break;
        s -= step;
        if (step <= 1e-17 * s) break;
    }
    return std::sqrt(s);
}

double transversality_defect(const NonsmoothSystem& sys, const Vec& x, int j, double abs_tol) {
    if (j < 1 || j > sys.switch_count())
        throw DomainError("switch index " + std::to_string(j) + " out of range");
    const std::vector<double> b = sys.boundaries(x);
    Vec acc = Vec::Zero(sys.dim);
    QuadratureOptions opt;
    opt.abs_tol = abs_tol;
    for (int piece = 0; piece < j; ++piece) {
        auto f = [&](double t) { return sys.first_order[piece](t, x); };
        acc += integrate(f, b[piece], b[piece + 1], sys.dim, opt);
    }
    return sys.switches[j - 1].gradient(x).dot(acc);
}

}  // namespace pwl
