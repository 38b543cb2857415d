#include "pwl/melnikov.hpp"

#include "pwl/chebyshev.hpp"
#include "pwl/geometry.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>

namespace pwl {

Vec melnikov1(const NonsmoothSystem& sys, const Vec& x, const MelnikovOptions& opt) {
    const std::vector<double> b = sys.boundaries(x);
    QuadratureOptions q;
    q.abs_tol = opt.abs_tol;
    Vec total = Vec::Zero(sys.dim);
    for (std::size_t j = 0; j + 1 < b.size(); ++j) {
        auto f = [&](double t) { return sys.first_order[j](t, x); };
        total += integrate(f, b[j], b[j + 1], sys.dim, q);
    }
    return total;
}

namespace {

Vec jump_term(const NonsmoothSystem& sys, const Vec& x, const std::vector<double>& b,
              const std::vector<Vec>& inner_at_switch) {
    Vec out = Vec::Zero(sys.dim);
    for (int j = 1; j <= sys.switch_count(); ++j) {
        const double t = b[j];
        const Vec jump = sys.first_order[j - 1](t, x) - sys.first_order[j](t, x);
        const double scale = sys.switches[j - 1].gradient(x).dot(inner_at_switch[j - 1]);
        out += jump * scale;
    }
    return out;
}

}  // namespace

SecondOrderParts melnikov2_parts(const NonsmoothSystem& sys, const Vec& x, const MelnikovOptions& opt) {
    const std::vector<double> b = sys.boundaries(x);
    if (opt.check_first_order) {
        const Vec d1 = melnikov1(sys, x, opt);
        if (d1.lpNorm<Eigen::Infinity>() > opt.first_order_tol)
            std::clog << "warning: first-order Melnikov function is " << d1.lpNorm<Eigen::Infinity>()
                      << " at this point; the second-order function is not meaningful here\n";
    }
    QuadratureOptions q;
    q.abs_tol = opt.abs_tol;
    q.noise_rel = 50 * std::numeric_limits<double>::epsilon();
    for (int j = 0; j <= sys.switch_count(); ++j) {
        if (sys.has_analytic_jacobian(j)) continue;
        // stencil roundoff ~ eps |F1| / h
        for (int i = 0; i < sys.dim; ++i)
            q.noise_rel = std::max(q.noise_rel, 50 * std::numeric_limits<double>::epsilon() *
                                                    std::max(1.0, std::abs(x[i])) / NonsmoothSystem::fd_step(x[i]));
    }
    SecondOrderParts parts{Vec::Zero(sys.dim), Vec::Zero(sys.dim)};
    Vec inner = Vec::Zero(sys.dim);
    std::vector<Vec> inner_at_switch;
    for (std::size_t j = 0; j + 1 < b.size(); ++j) {
        auto h = [&](double t) { return sys.first_order[j](t, x); };
        auto g = [&](double s, const Vec& running) {
            Vec v = sys.first_order_jacobian(static_cast<int>(j), s, x) * running;
            if (!sys.second_order.empty() && sys.second_order[j]) v += sys.second_order[j](s, x);
            return v;
        };
        const CumulativeResult res = integrate_cumulative(h, g, b[j], b[j + 1], inner, sys.dim, q);
        parts.f2 += res.outer;
        inner = res.inner_end;
        if (j + 2 < b.size()) inner_at_switch.push_back(inner);
    }
    parts.f2_star = jump_term(sys, x, b, inner_at_switch);
    return parts;
}

Vec melnikov2(const NonsmoothSystem& sys, const Vec& x, const MelnikovOptions& opt) {
    return melnikov2_parts(sys, x, opt).total();
}

Vec f2_star(const NonsmoothSystem& sys, const Vec& x, const MelnikovOptions& opt) {
    const std::vector<double> b = sys.boundaries(x);
    QuadratureOptions q;
    q.abs_tol = opt.abs_tol;
    std::vector<Vec> inner_at_switch;
    Vec inner = Vec::Zero(sys.dim);
    for (int j = 0; j < sys.switch_count(); ++j) {
        auto f = [&](double t) { return sys.first_order[j](t, x); };
        inner += integrate(f, b[j], b[j + 1], sys.dim, q);
        inner_at_switch.push_back(inner);
    }
    return jump_term(sys, x, b, inner_at_switch);
}

NonsmoothSystem paper_family_system(const PWLCoefficients& c, SecondOrderSource source) {
    validate(c);
    const PolarSeries first = polar_first_order(c);
    NonsmoothSystem sys;
    sys.period = 2 * std::numbers::pi;
    sys.dim = 1;
    sys.switches.push_back({[](const Vec& x) { return solve_theta1(x[0]).theta1; },
                            [](const Vec& x) { return Vec::Constant(1, solve_theta1(x[0]).dtheta1_dr); }});
    sys.switches.push_back({[](const Vec& x) { return solve_theta1(x[0]).theta2; },
                            [](const Vec& x) { return Vec::Constant(1, solve_theta1(x[0]).dtheta1_dr); }});

    const Zone zones[3] = {Zone::minus, Zone::plus, Zone::minus};
    for (Zone z : zones) {
        const TrigPolySeries s = z == Zone::plus ? first.plus : first.minus;
        sys.first_order.push_back([s](double t, const Vec& x) { return Vec::Constant(1, s.evaluate(t, x[0])); });
        sys.first_jacobian.push_back(
            [s](double t, const Vec& x) { return Mat::Constant(1, 1, s.derivative_r(t, x[0])); });
    }

    const bool tables = source == SecondOrderSource::tables ||
                        (source == SecondOrderSource::automatic && satisfies_vanishing_delta1(c));
    if (tables) {
        const PolarSeries second = polar_second_order(c);
        for (Zone z : zones) {
            const TrigPolySeries s = z == Zone::plus ? second.plus : second.minus;
            sys.second_order.push_back([s](double t, const Vec& x) { return Vec::Constant(1, s.evaluate(t, x[0])); });
        }
    } else {
        for (Zone z : zones)
            sys.second_order.push_back([c, z](double t, const Vec& x) {
                return Vec::Constant(1, polar_expansion(c, z, t, x[0]).second);
            });
    }
    return sys;
}

double delta1_closed(const GammaCoeffs<double>& g, double r) {
    const SwitchingAngle a = solve_theta1(r);
    return (g.gamma0 * std::cos(a.theta1) + g.gamma1 * r + g.gamma2 * std::sin(a.theta1)) / (2 * std::numbers::pi);
}

namespace {

RatPoly p1_from(const Rational& g0, const Rational& g1, const Rational& g2) {
    return RatPoly(std::vector<Rational>{g0, g1, g2, 0, 0, g1});
}

}  // namespace

RatPoly p1_poly(const GammaCoeffs<double>& g) {
    return p1_from(rational_from_double(g.gamma0), rational_from_double(g.gamma1), rational_from_double(g.gamma2));
}

RatPoly p1_poly(const GammaCoeffs<PiLaurent>& g) {
    return p1_from(g.gamma0.rational(), g.gamma1.rational(), g.gamma2.rational());
}

ClosedSecondOrder delta2_closed_parts(const Delta2Coeffs& d, double r) {
    const SwitchingAngle a = solve_theta1(r);
    const double c = std::cos(a.theta1), s = std::sin(a.theta1);
    ClosedSecondOrder out;
    out.f2 = d.delta1 * r + d.delta2 * c + d.delta3 * s + d.delta4 * c * c * c + d.delta5 * s * s * s;
    out.f2_star = r * r * c * c / (2 + 6 * r * r * c * s) * (d.mu1 * r + d.mu2 * c + d.mu3 * s) *
                  (d.eta1 + d.eta2 * c * c + d.eta3 * c * s);
    return out;
}

double delta2_closed(const Delta2Coeffs& d, double r) {
    const ClosedSecondOrder p = delta2_closed_parts(d, r);
    return (p.f2 + p.f2_star) / (2 * std::numbers::pi);
}

LambdaCoeffs lambda_coeffs(const PWLCoefficients& c) {
    LambdaCoeffs out;
    out.value = lambda_values(c);
    return out;
}

LambdaCoeffs lambda_coeffs(const ExactPWLCoefficients& c) {
    const std::array<PiLaurent, 8> l = lambda_values(c);
    LambdaCoeffs out;
    bool rational = true;
    for (int k = 0; k < 8; ++k) {
        out.value[k] = l[k].to_double();
        rational = rational && l[k].is_rational();
    }
    if (rational) {
        std::array<Rational, 8> q;
        for (int k = 0; k < 8; ++k) q[k] = l[k].rational();
        out.exact = q;
    }
    return out;
}

RatPoly p2_poly(const std::array<Rational, 8>& l) {
    const std::vector<RatPoly> u = prop2_basis();
    RatPoly p;
    for (int k = 0; k < 8; ++k) p += u[k] * l[k];
    return p;
}

RatPoly p2_poly(const LambdaCoeffs& l) {
    if (l.exact) return p2_poly(*l.exact);
    std::array<Rational, 8> q;
    for (int k = 0; k < 8; ++k) q[k] = rational_from_double(l.value[k]);
    return p2_poly(q);
}

}  // namespace pwl
