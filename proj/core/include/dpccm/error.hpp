// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace dpccm {

/// Base for every error raised by the library. The CLI maps subclasses onto
/// process exit codes, so keep the hierarchy flat.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a map or table.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Slope requested exactly at a kink of a piecewise-linear family.
class BreakpointError : public Error {
public:
    using Error::Error;
};

/// Seed orbit too narrow to define a control transform.
class CalibrationError : public Error {
public:
    using Error::Error;
};

/// Caller violated a documented precondition (lengths, ranges, parameters).
class UsageError : public Error {
public:
    using Error::Error;
};

/// Iterative numerics failed (non-convergence, too many perturbations, ...).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// File could not be read or written, or its contents do not parse.
class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed input data (bitstream text, CSV, JSON config).
class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace dpccm
