#pragma once

#include <stdexcept>
#include <string>

namespace nhse {

/// Base class for all library errors. The CLI maps the concrete type to an
/// exit code: invalid input 2, numerical failure 3, verification failure 4.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A spec, config value, or argument violates a documented precondition.
class InvalidSpecError : public Error {
public:
    explicit InvalidSpecError(const std::string& what)
        : Error("invalid-spec: " + what) {}
};

/// The request is well formed but outside the implemented regime
/// (for instance a nonzero gain matrix where only pure loss is supported).
class RegimeError : public InvalidSpecError {
public:
    explicit RegimeError(const std::string& what) : InvalidSpecError(what) {}
};

/// A dimension cap would be exceeded.
class SizeError : public InvalidSpecError {
public:
    explicit SizeError(const std::string& what) : InvalidSpecError(what) {}
};

/// An algorithm failed to reach its accuracy contract.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what)
        : Error("numerical-failure: " + what) {}
};

/// A linear system was singular to working tolerance.
class SingularityError : public NumericalError {
public:
    explicit SingularityError(const std::string& what) : NumericalError(what) {}
};

} // namespace nhse
