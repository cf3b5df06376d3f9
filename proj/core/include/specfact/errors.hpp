#pragma once

#include <stdexcept>
#include <string>

namespace specfact {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failures: the input is structurally valid but a computation
/// could not be carried out (singular pivot, lost positive definiteness, ...).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Bad arguments or malformed data (schema violations, window mismatches).
class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

class AliasError : public InvalidArgumentError {
public:
    using InvalidArgumentError::InvalidArgumentError;
};

class SingularMatrixError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularNodeError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NotPositiveDefiniteError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NotHermitianError : public InvalidArgumentError {
public:
    using InvalidArgumentError::InvalidArgumentError;
};

class NonPositiveSampleError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DivergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class PoleOnCircleError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class IllConditionedV0Error : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class AllNodesSingularError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NegativePowerError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularDeltaError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class IllConditionedDeltaError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularAtZeroError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class UnknownFixtureError : public InvalidArgumentError {
public:
    using InvalidArgumentError::InvalidArgumentError;
};

class IoError : public Error {
public:
    using Error::Error;
};

class SchemaError : public InvalidArgumentError {
public:
    using InvalidArgumentError::InvalidArgumentError;
};

} // namespace specfact
