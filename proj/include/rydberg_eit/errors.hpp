#pragma once

#include <stdexcept>
#include <string>

namespace rydberg {

// Root of the library's exception hierarchy. The CLI maps each subclass to an exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class InvalidScenario : public Error {
public:
    using Error::Error;
};

// A numerical post-condition (hermiticity, unitarity, residual) did not hold.
class ContractViolation : public Error {
public:
    using Error::Error;
};

class SingularSystem : public Error {
public:
    using Error::Error;
};

class SizeLimitExceeded : public Error {
public:
    using Error::Error;
};

class DegenerateSteadyState : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace rydberg
