#pragma once

#include "pwl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace pwl {

/// theta_j(x) together with its gradient D_x theta_j(x) (a d-vector).
struct SwitchingFunction {
    std::function<double(const Vec&)> angle;
    std::function<Vec(const Vec&)> gradient;
};

using PieceField = std::function<Vec(double, const Vec&)>;
using PieceJacobian = std::function<Mat(double, const Vec&)>;
using Remainder = std::function<Vec(double, const Vec&, double)>;

/// T-periodic system  x' = sum_i eps^i F_i^j(t, x) + eps^3 R  on the slab
/// theta_j(x) < t < theta_{j+1}(x), j = 0..M, with theta_0 = 0, theta_{M+1} = T.
struct NonsmoothSystem {
    double period = 0.0;
    int dim = 1;
    std::vector<SwitchingFunction> switches;     // M entries
    std::vector<PieceField> first_order;         // M+1 entries
    std::vector<PieceField> second_order;        // M+1 entries, may be empty
    std::vector<PieceJacobian> first_jacobian;   // empty, or M+1 entries (null -> finite differences)
    Remainder remainder;                         // carried along, unused by the Melnikov engine

    int switch_count() const { return static_cast<int>(switches.size()); }

    /// 0, theta_1(x), ..., theta_M(x), T. OrderingViolation unless strictly
    /// increasing; DomainError for malformed systems.
    std::vector<double> boundaries(const Vec& x) const;

    /// D_x F_1^j at (t, x): analytic if supplied, else five-point central
    /// differences with step max(1e-6, 1e-8|x_i|) per coordinate.
    Mat first_order_jacobian(int piece, double t, const Vec& x) const;

    static double fd_step(double xi) { return std::max(1e-6, 1e-8 * std::abs(xi)); }
    bool has_analytic_jacobian(int piece) const { return !first_jacobian.empty() && first_jacobian[piece]; }

    /// Piece index active at time t (boundaries from `boundaries`).
    static int piece_at(const std::vector<double>& bounds, double t);

    void validate() const;
};

}  // namespace pwl
