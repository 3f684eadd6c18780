#pragma once

#include <stdexcept>
#include <string>

namespace flagopp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotPrimePowerError : Error {
    using Error::Error;
};

struct UnsupportedError : Error {
    using Error::Error;
};

struct DivisionByZeroError : Error {
    using Error::Error;
};

// Incidence data fails a generalized-quadrangle axiom; message names the
// first violated axiom and a witness.
struct NotGQError : Error {
    using Error::Error;
};

struct InvalidGridError : Error {
    using Error::Error;
};

struct ConstructionFailedError : Error {
    using Error::Error;
};

struct NotPartitionError : Error {
    using Error::Error;
};

struct NotLineIndependentError : Error {
    using Error::Error;
};

struct FingerprintMismatchError : Error {
    using Error::Error;
};

} // namespace flagopp
