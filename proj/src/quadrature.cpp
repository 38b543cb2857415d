#include "pwl/quadrature.hpp"

#include "pwl/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

namespace pwl {

namespace {

// Kronrod 15-point nodes (nonnegative half) and weights; every odd index is
// also a Gauss 7-point node.
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Rule {
    Vec kronrod;
    double error;
    double magnitude;  // max-norm of the K15 estimate of integral |f|
};

Rule gk15(const std::function<Vec(double)>& f, double a, double b, int dim) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    Vec fc = f(c);
    Vec k = wgk[7] * fc;
    Vec g = wg[3] * fc;
    Vec mag = wgk[7] * fc.cwiseAbs();
    for (int i = 0; i < 7; ++i) {
        const Vec f1 = f(c - h * xgk[i]);
        const Vec f2 = f(c + h * xgk[i]);
        k += wgk[i] * (f1 + f2);
        mag += wgk[i] * (f1.cwiseAbs() + f2.cwiseAbs());
        if (i % 2 == 1) g += wg[i / 2] * (f1 + f2);
    }
    k *= h;
    g *= h;
    (void)dim;
    return {k, (k - g).lpNorm<Eigen::Infinity>(), std::abs(h) * mag.lpNorm<Eigen::Infinity>()};
}

struct Piece {
    double a, b;
    Vec value;
    double error;
    bool operator<(const Piece& o) const { return error < o.error; }
};

struct GaussLegendreTable {
    std::vector<double> nodes, weights;
};

GaussLegendreTable make_gauss_legendre(int n) {
    GaussLegendreTable t;
    t.nodes.resize(n);
    t.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        t.nodes[i] = x;
        t.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return t;
}

const GaussLegendreTable& gauss_legendre_table(int n) {
    static const GaussLegendreTable t20 = make_gauss_legendre(20);
    if (n == 20) return t20;
    thread_local GaussLegendreTable other;
    thread_local int other_n = -1;
    if (other_n != n) {
        other = make_gauss_legendre(n);
        other_n = n;
    }
    return other;
}

}  // namespace

Vec integrate(const std::function<Vec(double)>& f, double a, double b, int dim, const QuadratureOptions& opt) {
    if (a == b) return Vec::Zero(dim);
    std::priority_queue<Piece> heap;
    Rule first = gk15(f, a, b, dim);
    Vec total = first.kronrod;
    double total_err = first.error;
    heap.push({a, b, first.kronrod, first.error});
    int count = 1;
    while (total_err > opt.abs_tol) {
        if (count >= opt.max_intervals)
            throw QuadratureFailure("adaptive quadrature did not reach tolerance " + std::to_string(opt.abs_tol) +
                                    " (estimate " + std::to_string(total_err) + ")");
        Piece worst = heap.top();
        heap.pop();
        const double m = 0.5 * (worst.a + worst.b);
        if (m <= worst.a || m >= worst.b)
            throw QuadratureFailure("adaptive quadrature: interval collapsed near " + std::to_string(m));
        Rule left = gk15(f, worst.a, m, dim);
        Rule right = gk15(f, m, worst.b, dim);
        total += left.kronrod + right.kronrod - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push({worst.a, m, left.kronrod, left.error});
        heap.push({m, worst.b, right.kronrod, right.error});
        ++count;
    }
    // Re-sum to shed the drift of incremental updates.
    Vec sum = Vec::Zero(dim);
    while (!heap.empty()) {
        sum += heap.top().value;
        heap.pop();
    }
    return sum;
}

double integrate(const std::function<double(double)>& f, double a, double b, const QuadratureOptions& opt) {
    auto vf = [&](double t) {
        Vec v(1);
        v[0] = f(t);
        return v;
    };
    return integrate(vf, a, b, 1, opt)[0];
}

Vec gauss_legendre(const std::function<Vec(double)>& f, double a, double b, int dim, int n) {
    const GaussLegendreTable& t = gauss_legendre_table(n);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    Vec sum = Vec::Zero(dim);
    for (int i = 0; i < n; ++i) sum += t.weights[i] * f(c + h * t.nodes[i]);
    return h * sum;
}

CumulativeResult integrate_cumulative(const std::function<Vec(double)>& h,
                                      const std::function<Vec(double, const Vec&)>& g, double a, double b,
                                      const Vec& inner_start, int dim, const QuadratureOptions& opt) {
    CumulativeResult res{Vec::Zero(dim), inner_start};
    if (a == b) return res;
    const double length = b - a;
    int evaluated = 0;

    // Depth-first, left to right: `res.inner_end` always holds I(left end).
    struct Frame {
        double lo, hi;
    };
    std::vector<Frame> stack{{a, b}};
    while (!stack.empty()) {
        const Frame fr = stack.back();
        stack.pop_back();
        if (++evaluated > opt.max_intervals)
            throw QuadratureFailure("cumulative quadrature exceeded the interval budget");
        const Vec inner_lo = res.inner_end;
        auto outer = [&](double s) {
            const Vec partial = inner_lo + gauss_legendre(h, fr.lo, s, dim);
            return g(s, partial);
        };
        const Rule rule = gk15(outer, fr.lo, fr.hi, dim);
        const Vec inner_gain = gauss_legendre(h, fr.lo, fr.hi, dim);
        const Vec inner_check = gauss_legendre(h, fr.lo, fr.hi, dim, 15);
        const double inner_err = (inner_gain - inner_check).lpNorm<Eigen::Infinity>();
        const double budget = std::max(opt.abs_tol * (fr.hi - fr.lo) / length, opt.noise_rel * rule.magnitude);
        const double m = 0.5 * (fr.lo + fr.hi);
        const bool can_split = m > fr.lo && m < fr.hi;
        if ((rule.error <= budget && inner_err <= 0.1 * budget) || !can_split) {
            if (!can_split && rule.error > budget)
                throw QuadratureFailure("cumulative quadrature: interval collapsed near " + std::to_string(m));
            res.outer += rule.kronrod;
            res.inner_end = inner_lo + inner_gain;
        } else {
            stack.push_back({m, fr.hi});
            stack.push_back({fr.lo, m});
        }
    }
    return res;
}

}  // namespace pwl
