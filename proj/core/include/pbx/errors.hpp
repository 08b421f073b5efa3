#pragma once

#include <stdexcept>
#include <string>

namespace pbx {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A call violated an operation's contract (bad arguments, unmet precondition).
class UsageError : public Error {
public:
    using Error::Error;
};

/// Input data failed validation (non-dichotomous pair, duplicate word, bad tiling).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A classifier was handed input that satisfies the preconditions but does not
/// match the forced structural template. On valid input this indicates a bug,
/// since the structure lemmas leave no other shape.
class TemplateMismatchError : public Error {
public:
    using Error::Error;
};

/// An internal consistency guarantee failed, e.g. an existence result that the
/// theory promises did not materialise. Always a defect, never a user error.
class DefectError : public Error {
public:
    using Error::Error;
};

/// The requested computation does not fit the configured resource budget.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// Text input could not be parsed. Carries a 1-based location.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(what), line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

} // namespace pbx
