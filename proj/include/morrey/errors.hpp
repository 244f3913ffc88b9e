#pragma once

#include <stdexcept>
#include <string>

namespace morrey {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value violates a documented precondition (bad exponent, empty grid, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// lambda + p - 1 <= 0, so beta = 1/(lambda + p - 1) does not exist.
class DegenerateParameters : public Error {
public:
    using Error::Error;
};

/// A weight (or a power of it) is not integrable on the requested set.
class NonIntegrable : public Error {
public:
    using Error::Error;
};

/// The operation is not implemented for this weight / dimension combination.
class Unsupported : public Error {
public:
    using Error::Error;
};

/// Pointwise Hilbert transform requested exactly at a jump of the step function.
class BreakpointEvaluation : public Error {
public:
    using Error::Error;
};

/// A weight fails (p, lambda)-admissibility, so a functional is not finite.
class AdmissibilityFailure : public Error {
public:
    using Error::Error;
};

}  // namespace morrey
