#pragma once

#include <stdexcept>
#include <string>

namespace symform {

// Error taxonomy used across the library. The CLI maps these onto exit
// codes: invalid input / config -> 2, numerical trouble -> 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInputError : Error {
    using Error::Error;
};

// A matrix function hit an eigenvalue outside its domain (log/negative
// power at a clamped-zero eigenvalue).
struct SingularSpectrumError : Error {
    SingularSpectrumError(const std::string& what, double eigenvalue)
        : Error(what + " (offending eigenvalue " + std::to_string(eigenvalue) + ")"),
          offending_eigenvalue(eigenvalue) {}
    double offending_eigenvalue;
};

struct IllConditionedError : Error {
    using Error::Error;
};

struct ResourceLimitError : Error {
    using Error::Error;
};

struct PreconditionFailedError : Error {
    using Error::Error;
};

struct NumericalFailureError : Error {
    using Error::Error;
};

}  // namespace symform
