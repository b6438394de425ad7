#pragma once

#include <stdexcept>
#include <string>

namespace cmvp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter or sequence value is outside the range an operation accepts.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A ratio recursion or closed form hit a vanishing denominator.
class PoleError : public Error {
public:
    PoleError(const std::string& what, long index) : Error(what), index_(index) {}
    [[nodiscard]] long index() const noexcept { return index_; }

private:
    long index_;
};

/// An iterative numerical method did not reach its tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double estimate, double achieved_error)
        : Error(what), estimate_(estimate), achieved_error_(achieved_error) {}
    [[nodiscard]] double estimate() const noexcept { return estimate_; }
    [[nodiscard]] double achieved_error() const noexcept { return achieved_error_; }

private:
    double estimate_;
    double achieved_error_;
};

/// Loss of positivity in a Gram/Stieltjes computation.
class InstabilityError : public Error {
public:
    InstabilityError(const std::string& what, long index) : Error(what), index_(index) {}
    [[nodiscard]] long index() const noexcept { return index_; }

private:
    long index_;
};

/// Two algebraically equivalent routes disagreed beyond their tolerance.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace cmvp
