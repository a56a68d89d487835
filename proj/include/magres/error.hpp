/**
 * @file error.hpp
 * @brief Exception types shared by all magres modules.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace magres {

/// Argument outside the domain of an evaluator.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A series, recurrence or iteration failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature could not meet the requested accuracy.
class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical invariant check (curl, Stokes, flux, margin, fit quality) failed.
class CheckFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The requested regime is not covered by the closed-form formulas.
class UnsupportedRegime : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace magres
