#pragma once

#include <span>
#include <string>
#include <vector>

namespace pwl {

/// One term r^p (c cos(h theta) + s sin(h theta)).
struct TrigTerm {
    int r_power = 0;
    int harmonic = 0;
    double cos_coeff = 0.0;
    double sin_coeff = 0.0;
};

/// Finite Fourier series in theta with integer powers of r as weights.
/// Terms are kept sorted by (r_power, harmonic), without duplicates and
/// without all-zero entries; sin coefficients of harmonic 0 are dropped.
class TrigPolySeries {
public:
    TrigPolySeries() = default;

    /// Adds into the (r_power, harmonic) slot. r_power >= -1, harmonic >= 0.
    void add(int r_power, int harmonic, double cos_coeff, double sin_coeff = 0.0);

    /// DomainError if r <= 0 and a 1/r term is present.
    double evaluate(double theta, double r) const;
    /// Partial derivative in r.
    double derivative_r(double theta, double r) const;

    std::span<const TrigTerm> terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Coefficient lookup; zero when the slot is empty.
    double cos_coeff(int r_power, int harmonic) const;
    double sin_coeff(int r_power, int harmonic) const;

    TrigPolySeries& operator+=(const TrigPolySeries& rhs);
    friend TrigPolySeries operator+(TrigPolySeries a, const TrigPolySeries& b) { return a += b; }

    /// Human-readable table, one term per line.
    std::string to_table() const;

private:
    const TrigTerm* find(int r_power, int harmonic) const;
    std::vector<TrigTerm> terms_;
};

}  // namespace pwl
