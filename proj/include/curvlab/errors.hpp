#pragma once

#include <stdexcept>
#include <string>

namespace curvlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

/// Evaluation of a rational function at a root of its denominator.
class PoleError : public Error {
public:
    PoleError(std::string where, std::string at)
        : Error("pole of " + where + " at U = " + at), at_(std::move(at)) {}

    const std::string& at() const noexcept { return at_; }

private:
    std::string at_;
};

class DegreeOverflow : public Error {
public:
    using Error::Error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class DegenerateAnsatz : public Error {
public:
    using Error::Error;
};

class IntegrationError : public Error {
public:
    using Error::Error;
};

class NotApplicable : public Error {
public:
    using Error::Error;
};

class InconsistentFamily : public Error {
public:
    using Error::Error;
};

class InconsistentFactor : public Error {
public:
    using Error::Error;
};

class SingularMetric : public Error {
public:
    using Error::Error;
};

}  // namespace curvlab
