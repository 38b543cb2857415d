#pragma once

#include <Eigen/Dense>

#include <functional>

namespace pwl {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct QuadratureOptions {
    double abs_tol = 1e-10;
    int max_intervals = 4000;
    /// integrate_cumulative accepts a subinterval once its error estimate is
    /// below noise_rel * integral of |g| there (roundoff floor). 0 disables.
    double noise_rel = 0.0;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of a vector-valued
/// integrand on [a, b]. The error estimate is the max-norm of K15 - G7
/// summed over intervals. QuadratureFailure when max_intervals is reached.
Vec integrate(const std::function<Vec(double)>& f, double a, double b, int dim,
              const QuadratureOptions& opt = {});

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt = {});

/// Fixed-order Gauss-Legendre rule on [a, b].
Vec gauss_legendre(const std::function<Vec(double)>& f, double a, double b, int dim, int n = 20);

/// Computes  integral_a^b g(s, I(s)) ds  where I(s) = I0 + integral_a^s h(t) dt.
/// The outer integral is adapted left to right so I is carried forward
/// exactly at subinterval ends; inside a subinterval I is evaluated by
/// Gauss-Legendre. Returns {outer integral, I(b)}.
struct CumulativeResult {
    Vec outer;
    Vec inner_end;
};
CumulativeResult integrate_cumulative(const std::function<Vec(double)>& h,
                                      const std::function<Vec(double, const Vec&)>& g,
                                      double a, double b, const Vec& inner_start, int dim,
                                      const QuadratureOptions& opt = {});

}  // namespace pwl
