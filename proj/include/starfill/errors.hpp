#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace starfill {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text (grammar files, FASTA, star models, rule tables).
/// Carries a 1-based line and column when they are known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : Error(format(what, line, column)), line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    static std::string format(const std::string& what, std::size_t line, std::size_t column) {
        if (line == 0) return what;
        std::string s = "line " + std::to_string(line);
        if (column != 0) s += ", column " + std::to_string(column);
        return s + ": " + what;
    }

    std::size_t line_;
    std::size_t column_;
};

/// Inputs that parse but violate a documented precondition.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Star-model construction rejected its inputs (too few, unequal lengths).
class StarBuildError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// An expansion would exceed the configured output-length cap.
class ExpansionLimitError : public Error {
public:
    using Error::Error;
};

/// The symbol stream ended (or can never grow far enough) before the
/// consumer was satisfied.
class StreamExhaustedError : public Error {
public:
    using Error::Error;
};

/// fail-on-mismatch policy hit a stream symbol outside the allowed set.
class PolicyMismatchError : public Error {
public:
    using Error::Error;
};

/// Filesystem failure (missing file, unwritable output).
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace starfill
