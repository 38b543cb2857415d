#include "pwl/nonsmooth_system.hpp"

#include "pwl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pwl {

void NonsmoothSystem::validate() const {
    if (!(period > 0.0) || !std::isfinite(period)) throw DomainError("period must be positive and finite");
    if (dim < 1) throw DomainError("dimension must be positive");
    const std::size_t pieces = switches.size() + 1;
    if (first_order.size() != pieces)
        throw DomainError("expected " + std::to_string(pieces) + " first-order pieces, got " +
                          std::to_string(first_order.size()));
    if (!second_order.empty() && second_order.size() != pieces)
        throw DomainError("second-order pieces must be empty or match the first-order count");
    if (!first_jacobian.empty() && first_jacobian.size() != pieces)
        throw DomainError("Jacobian list must be empty or match the piece count");
    for (const auto& s : switches)
        if (!s.angle || !s.gradient) throw DomainError("switching function without angle or gradient");
    for (const auto& f : first_order)
        if (!f) throw DomainError("missing first-order piece");
}

std::vector<double> NonsmoothSystem::boundaries(const Vec& x) const {
    validate();
    if (x.size() != dim) throw DomainError("state has dimension " + std::to_string(x.size()));
    std::vector<double> b;
    b.reserve(switches.size() + 2);
    b.push_back(0.0);
    for (const auto& s : switches) b.push_back(s.angle(x));
    b.push_back(period);
    for (std::size_t i = 1; i < b.size(); ++i)
        if (!(b[i] > b[i - 1]))
            throw OrderingViolation("switching times not strictly increasing at index " + std::to_string(i) + ": " +
                                    std::to_string(b[i - 1]) + " >= " + std::to_string(b[i]));
    return b;
}

Mat NonsmoothSystem::first_order_jacobian(int piece, double t, const Vec& x) const {
    if (has_analytic_jacobian(piece)) return first_jacobian[piece](t, x);
    const PieceField& f = first_order[piece];
    Mat jac(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const double h = fd_step(x[i]);
        Vec xp1 = x, xm1 = x, xp2 = x, xm2 = x;
        xp1[i] += h;
        xm1[i] -= h;
        xp2[i] += 2 * h;
        xm2[i] -= 2 * h;
        jac.col(i) = (8.0 * (f(t, xp1) - f(t, xm1)) - (f(t, xp2) - f(t, xm2))) / (12.0 * h);
    }
    return jac;
}

int NonsmoothSystem::piece_at(const std::vector<double>& bounds, double t) {
    auto it = std::upper_bound(bounds.begin() + 1, bounds.end() - 1, t);
    return static_cast<int>(it - bounds.begin()) - 1;
}

}  // namespace pwl
