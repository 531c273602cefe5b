#pragma once

#include <stdexcept>
#include <string>

namespace evfront {

// Base class so callers can catch everything the library throws in one place.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain (e.g. a point on a branch cut with no sheet).
class DomainError : public Error {
public:
    using Error::Error;
};

// Frequency sits exactly on a branch point (Omega = 0, or |Omega| = mc^2).
class ThresholdError : public DomainError {
public:
    using DomainError::DomainError;
};

// Relativistic quantity requested outside the light cone.
class CausalRegionError : public DomainError {
public:
    using DomainError::DomainError;
};

// Near-front formula requested far away from the front.
class WindowError : public DomainError {
public:
    using DomainError::DomainError;
};

// Asymptotic formula requested outside its regime of validity.
class RegimeError : public DomainError {
public:
    using DomainError::DomainError;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace evfront
