#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lefschetz {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : Error(format(what, line, column)), message_(what), line_(line), column_(column) {}

    /// The message without the position prefix.
    const std::string& message() const { return message_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    static std::string format(const std::string& what, std::size_t line, std::size_t column) {
        if (line == 0) return what;
        return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
    }
    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

/// Inputs violate a documented precondition (bad genus, mismatched sizes, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A rewrite move whose pattern or intersection requirements are not met.
class IllegalMove : public Error {
public:
    using Error::Error;
};

/// An exact division that would have to round.
class NonIntegral : public Error {
public:
    using Error::Error;
};

class GenusMismatch : public Error {
public:
    using Error::Error;
};

/// A decision procedure whose hypotheses are not met by the input.
class RefusesVerdict : public Error {
public:
    using Error::Error;
};

class NoSuchFibre : public Error {
public:
    using Error::Error;
};

class NonDivisible : public Error {
public:
    using Error::Error;
};

}  // namespace lefschetz
