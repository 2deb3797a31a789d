#pragma once

#include <stdexcept>

namespace coboson {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad argument or violated precondition.
struct InvalidParameter : Error {
    using Error::Error;
};

// Input object violates a documented contract (e.g. unnormalized grid).
struct ContractViolation : Error {
    using Error::Error;
};

// Numerical failure: decomposition did not converge, consistency check broke.
struct NumericError : Error {
    using Error::Error;
};

// Requested computation exceeds an enumeration or memory guard.
struct SizeGuardError : Error {
    using Error::Error;
};

// Fermionic normalization constant vanished in a denominator.
struct PauliBlockedError : Error {
    using Error::Error;
};

// File could not be opened or written.
struct IoError : Error {
    using Error::Error;
};

}  // namespace coboson
