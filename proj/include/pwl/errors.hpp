#pragma once

#include <stdexcept>
#include <string>

namespace pwl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (r <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Coefficients violate the vanishing first-order conditions required by a
/// second-order formula.
class ConditionViolation : public Error {
public:
    using Error::Error;
};

class QuadratureFailure : public Error {
public:
    using Error::Error;
};

/// Switching angles not strictly increasing inside (0, T).
class OrderingViolation : public Error {
public:
    using Error::Error;
};

class UnknownPreset : public Error {
public:
    using Error::Error;
};

class ZeroPolynomial : public Error {
public:
    using Error::Error;
};

/// Malformed textual input (polynomials, rationals, JSON configs).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Trajectory touches the switching curve tangentially; crossing dynamics
/// no longer apply.
class GrazingDetected : public Error {
public:
    using Error::Error;
};

class StepLimitExceeded : public Error {
public:
    using Error::Error;
};

/// Trajectory failed to come back to the Poincare section.
class NoReturn : public Error {
public:
    using Error::Error;
};

}  // namespace pwl
