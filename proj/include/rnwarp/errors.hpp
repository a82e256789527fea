#pragma once

#include <stdexcept>
#include <string>

namespace rnwarp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the region where the quantity is defined.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Q >= m: the horizons coincide or do not exist, so there is no interior.
class ExtremalError : public DomainError {
public:
    using DomainError::DomainError;
};

/// An iterative method ran out of iterations.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double last_estimate, double error_bound)
        : Error(what), last_estimate_(last_estimate), error_bound_(error_bound) {}

    double last_estimate() const noexcept { return last_estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double last_estimate_;
    double error_bound_;
};

/// The root finder was handed an interval without a sign change.
class BracketError : public Error {
public:
    using Error::Error;
};

/// The metric could not be inverted at the requested point.
class SingularMetricError : public Error {
public:
    using Error::Error;
};

}  // namespace rnwarp
