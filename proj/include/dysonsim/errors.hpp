#pragma once

#include <stdexcept>
#include <string>

namespace dysonsim {

// Every error carries the name of the module that raised it so the CLI can
// report provenance for numerical failures.
class Error : public std::runtime_error {
public:
    Error(std::string module, const std::string& what)
        : std::runtime_error(what), module_(std::move(module)) {}

    const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

// Input that does not satisfy a documented precondition.
class ValidationError : public Error {
public:
    using Error::Error;
};

class DimensionError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Failures of the numerics themselves: overflow, stiffness, unmet quadrature
// tolerance, exhausted random streams.
class NumericalError : public Error {
public:
    using Error::Error;
};

class RangeError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class StiffnessError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class QuadratureError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class RngExhaustedError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace dysonsim
