#pragma once

#include <stdexcept>
#include <string>

namespace pwlab {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid or inconsistent parameters.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Non-finite or malformed sample data.
class DataError : public Error {
public:
    using Error::Error;
};

/// Two operands live on different grids.
class GridMismatchError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

/// A size cap was exceeded.
class CapExceededError : public Error {
public:
    using Error::Error;
};

/// Weight or strength combination an estimator does not support.
class UnsupportedWeightError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

/// Numerical guard violation; carries the guard's name.
class GuardViolation : public Error {
public:
    GuardViolation(std::string guard, const std::string& what)
        : Error(what), guard_(std::move(guard)) {}
    const std::string& guard() const noexcept { return guard_; }

private:
    std::string guard_;
};

/// Samples do not decay on the boundary shell, so periodization is unsafe.
class PeriodizationError : public GuardViolation {
public:
    PeriodizationError(double shellRatio, const std::string& what)
        : GuardViolation("boundary-decay", what), shellRatio_(shellRatio) {}
    double shellRatio() const noexcept { return shellRatio_; }

private:
    double shellRatio_;
};

/// A spectral multiplier pushes energy to the Nyquist edge.
class NyquistError : public GuardViolation {
public:
    NyquistError(double edgeRatio, const std::string& what)
        : GuardViolation("nyquist-saturation", what), edgeRatio_(edgeRatio) {}
    double edgeRatio() const noexcept { return edgeRatio_; }

private:
    double edgeRatio_;
};

}  // namespace pwlab
