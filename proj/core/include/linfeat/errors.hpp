#pragma once

#include <stdexcept>
#include <string>

namespace linfeat {

/// Base class for all linfeat errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument value (bad range, dimension mismatch, out-of-bounds count).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Input data violates a structural invariant (ragged rows, non-monotone grid,
/// non-finite entries, overlapping split indices).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Unparseable file content.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Feature evaluation produced a non-finite value.
class EvaluationError : public Error {
public:
    using Error::Error;
};

/// Numeric failure inside a fit or search (degenerate feature, degenerate
/// PLS deflation, failed factorization).
class NumericError : public Error {
public:
    using Error::Error;
};

/// Bad or inconsistent run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Filesystem failure.
class IoError : public Error {
public:
    using Error::Error;
};

/// Process exit code for an error escaping the CLI:
/// 2 config, 3 data, 4 numeric, 1 anything else.
int cli_exit_code(const std::exception& e);

}  // namespace linfeat
