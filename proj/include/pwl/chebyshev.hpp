#pragma once

#include "pwl/ratpoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pwl {

/// Determinant of the (k+1)x(k+1) matrix [u_i^(m)], i, m = 0..k, by
/// fraction-free (Bareiss) elimination over Q[x]. DomainError if k is out
/// of range.
RatPoly wronskian(const std::vector<RatPoly>& basis, int k);

/// Number of distinct real roots in (lo, hi]; an empty bound means
/// -inf / +inf. ZeroPolynomial for p = 0, DomainError unless lo < hi.
int sturm_count(const RatPoly& p, const std::optional<Rational>& lo = std::nullopt,
                const std::optional<Rational>& hi = std::nullopt);

struct IsolatedRoot {
    Rational lo, hi;  // root in (lo, hi]; lo == hi for an exactly hit root
    double value;
};

/// Disjoint isolating intervals for the distinct real roots in (lo, hi],
/// each refined by bisection to width <= min(1e-12, 1e-15 |root|) (at least
/// 1e-12 wide is never required). Sorted ascending.
std::vector<IsolatedRoot> isolate_roots(const RatPoly& p, const std::optional<Rational>& lo = std::nullopt,
                                        const std::optional<Rational>& hi = std::nullopt);

enum class EctClass { ECT, ECT_ACCURACY_1, NEITHER };
const char* to_string(EctClass c);

struct EctVerdict {
    EctClass classification = EctClass::NEITHER;
    std::vector<int> root_counts;   // distinct roots of W_k in the open interval (a, b); -1: W_k == 0
    bool last_root_simple = false;  // meaningful for ECT_ACCURACY_1
};

/// Classifies the ordered basis on the open interval (a, b) from exact
/// root counts of its Wronskians.
EctVerdict ect_classify(const std::vector<RatPoly>& basis, const Rational& a, const Rational& b);

/// [1, x + x^5, x^2]
std::vector<RatPoly> prop1_basis();
/// [x^5, x^4, x^6, x^7, 1, x^2, x^3 - x^7, x + 3x^9]
std::vector<RatPoly> prop2_basis();

/// Resolves "prop1", "prop2", or a ';'-separated list of polynomials.
std::vector<RatPoly> basis_from_spec(const std::string& spec);

}  // namespace pwl
