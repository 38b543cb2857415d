#pragma once

#include "pwl/nonsmooth_system.hpp"

#include <cmath>
#include <numbers>

namespace pwl::testing {

template <class F>
double simpson(F f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
    return s * h / 3;
}

// Two-dimensional system with one switch at the constant time 2, smooth
// nonlinear pieces and second-order terms. Jacobians are left to the
// finite-difference fallback unless `analytic` is set.
struct SmoothLimitSystem {
    static constexpr double ts = 2.0;

    static Vec f1a(double t, const Vec& x) {
        Vec v(2);
        v << std::sin(t) * x[0] * x[1], std::cos(t) * x[0] * x[0];
        return v;
    }
    static Vec f1b(double t, const Vec& x) {
        Vec v(2);
        v << x[1] * std::cos(2 * t), x[0] + std::sin(t) * x[1];
        return v;
    }
    static Vec f2a(double t, const Vec& x) {
        Vec v(2);
        v << x[0] * std::sin(t), std::cos(t);
        return v;
    }
    static Vec f2b(double t, const Vec& x) {
        Vec v(2);
        v << 0.5, x[1] * x[1] * std::cos(3 * t);
        return v;
    }
    static Mat jac_a(double t, const Vec& y) {
        Mat m(2, 2);
        m << std::sin(t) * y[1], std::sin(t) * y[0], 2 * std::cos(t) * y[0], 0;
        return m;
    }
    static Mat jac_b(double t, const Vec&) {
        Mat m(2, 2);
        m << 0, std::cos(2 * t), 1, std::sin(t);
        return m;
    }

    static NonsmoothSystem system(bool analytic) {
        NonsmoothSystem sys;
        sys.period = 2 * std::numbers::pi;
        sys.dim = 2;
        sys.switches = {{[](const Vec&) { return ts; }, [](const Vec&) { return Vec::Zero(2); }}};
        sys.first_order = {f1a, f1b};
        sys.second_order = {f2a, f2b};
        if (analytic) sys.first_jacobian = {jac_a, jac_b};
        return sys;
    }

    // f2 by nested composite Simpson, each piece integrated separately.
    static Vec brute_force_f2(const Vec& x) {
        auto inner = [&](double s) {
            Vec acc = Vec::Zero(2);
            for (int i = 0; i < 2; ++i) {
                acc[i] = simpson([&](double t) { return f1a(t, x)[i]; }, 0.0, std::min(s, ts), 400);
                if (s > ts) acc[i] += simpson([&](double t) { return f1b(t, x)[i]; }, ts, s, 400);
            }
            return acc;
        };
        Vec want = Vec::Zero(2);
        for (int i = 0; i < 2; ++i) {
            auto before = [&](double s) { return (jac_a(s, x) * inner(s) + f2a(s, x))[i]; };
            auto after = [&](double s) { return (jac_b(s, x) * inner(s) + f2b(s, x))[i]; };
            want[i] = simpson(before, 0.0, ts, 2000) + simpson(after, ts, 2 * std::numbers::pi, 2000);
        }
        return want;
    }
};

// F1 identical on both sides of a moving switch.
inline NonsmoothSystem continuous_first_order_system() {
    NonsmoothSystem sys;
    sys.period = 2 * std::numbers::pi;
    sys.switches = {{[](const Vec& x) { return 2.0 + 0.1 * x[0]; }, [](const Vec&) { return Vec::Constant(1, 0.1); }}};
    auto smooth = [](double t, const Vec& x) { return Vec::Constant(1, std::sin(t) * x[0] * x[0] + 0.3); };
    sys.first_order = {smooth, smooth};
    return sys;
}

// F1 jumps across a switch that does not move.
inline NonsmoothSystem constant_switch_system() {
    NonsmoothSystem sys = continuous_first_order_system();
    sys.switches = {{[](const Vec&) { return 2.0; }, [](const Vec&) { return Vec::Zero(1); }}};
    sys.first_order[1] = [](double t, const Vec& x) { return Vec::Constant(1, std::cos(t) * x[0] - 1.0); };
    return sys;
}

}  // namespace pwl::testing
