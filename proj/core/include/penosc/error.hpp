#pragma once

#include <stdexcept>
#include <string>

namespace penosc {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (dimension mismatch, bad grid...).
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// The inputs are well formed but the computation cannot produce a result.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Bad configuration text or option combination. The CLI maps this to exit code 2.
class UsageError : public Error {
public:
    using Error::Error;
};

}  // namespace penosc
