#pragma once

#include <stdexcept>
#include <string>

namespace phi_ineq {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

// Integral requested over a range where the integrand is not integrable.
class NonIntegrableError : public Error {
public:
    using Error::Error;
};

// Series or closed-form summation outside its convergence region.
class DivergenceError : public Error {
public:
    using Error::Error;
};

class ToleranceNotMet : public Error {
public:
    using Error::Error;
};

class NonFiniteSample : public Error {
public:
    using Error::Error;
};

// Invalid command line or configuration; carries every violation found.
class UsageError : public Error {
public:
    using Error::Error;
};

} // namespace phi_ineq
