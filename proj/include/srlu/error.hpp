#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace srlu {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not conform.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A scalar parameter is outside its admissible range.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A documented precondition on an input does not hold (e.g. non-finite
/// values, non-orthonormal basis).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A sketch of one field was applied to a matrix of the other field.
class FieldError : public Error {
public:
    using Error::Error;
};

/// Malformed input file. Carries the 1-based line number of the offending line
/// (0 when the failure is not tied to a line, e.g. premature end of file).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A matrix that must have full column rank is numerically rank deficient.
class SingularityError : public Error {
public:
    SingularityError(const std::string& what, double condition_estimate)
        : Error(what), condition_(condition_estimate) {}

    double condition_estimate() const noexcept { return condition_; }

private:
    double condition_;
};

/// The randomized decomposition failed after exhausting its resampling budget.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace srlu
