#pragma once

#include "pwl/nonsmooth_system.hpp"

namespace pwl {

/// Angles at which the circle of radius r meets y = x^3.
struct SwitchingAngle {
    double r = 0.0;
    double theta1 = 0.0;      // in [0, pi/2)
    double theta2 = 0.0;      // theta1 + pi
    double dtheta1_dr = 0.0;
};

/// Root of sin(t) = r^2 cos^3(t) in [0, pi/2). DomainError for r <= 0.
SwitchingAngle solve_theta1(double r);

/// sqrt(x^2 + x^6). DomainError for x < 0.
double r_of_x(double x);
/// Inverse of r_of_x on [0, inf). DomainError for r < 0.
double x_of_r(double r);

/// D_x theta_j(x) . integral_0^{theta_j(x)} F_1(s, x) ds, for 1 <= j <= M.
double transversality_defect(const NonsmoothSystem& sys, const Vec& x, int j, double abs_tol = 1e-10);

}  // namespace pwl
