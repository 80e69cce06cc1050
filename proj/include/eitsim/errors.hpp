#pragma once

#include <stdexcept>
#include <string>

namespace eitsim {

// Base class for every error the library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A caller-supplied argument violates a documented precondition.
class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& what) : Error(what) {}
};

// Ingested data (samples, CSV rows) is malformed or unusable.
class InvalidData : public Error {
public:
    explicit InvalidData(const std::string& what) : Error(what) {}
};

// A numerical routine failed to reach its accuracy target.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(what) {}
};

// A nonlinear or linear fit could not be performed on the given data.
class FitError : public Error {
public:
    explicit FitError(const std::string& what) : Error(what) {}
};

// Scenario configuration is syntactically or semantically invalid.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

} // namespace eitsim
