#pragma once

#include <stdexcept>
#include <string>

namespace cqed {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid physical argument or precondition violation (Q <= 0, zero-norm
// superposition, detuned input to a resonant-only routine, ...).
struct DomainError : Error {
    using Error::Error;
};

// Operands live in different Hilbert spaces (mismatched n_max).
struct DimensionError : Error {
    using Error::Error;
};

// Amplitude would leave the truncated Fock space, or a coherent state does
// not fit below the requested truncation.
struct TruncationError : Error {
    using Error::Error;
};

// A calibrated phase does not actually satisfy its defining condition.
struct CalibrationError : Error {
    using Error::Error;
};

// Bad configuration file or command line.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace cqed
