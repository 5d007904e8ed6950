#pragma once

#include <stdexcept>
#include <string>

namespace avgkit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes do not line up (non-square input, row-count mismatch, ambient mismatch).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A scalar argument lies outside its admissible interval.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The operator or matrix violates a mathematical precondition (e.g. not nonexpansive).
class PreconditionError : public Error {
public:
    PreconditionError(const std::string& what, double margin)
        : Error(what), margin_(margin) {}
    explicit PreconditionError(const std::string& what) : Error(what) {}

    /// Smallest eigenvalue of the offending test matrix, when one was computed.
    double margin() const noexcept { return margin_; }

private:
    double margin_ = 0.0;
};

/// No finite solution exists (ker B not contained in ker A).
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// Malformed input document or command line.
class ParseError : public Error {
public:
    using Error::Error;
};

/// An internal numeric invariant failed (e.g. a denominator that must be positive).
class NumericError : public Error {
public:
    using Error::Error;
};

}  // namespace avgkit
