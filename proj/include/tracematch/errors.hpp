#pragma once

#include <stdexcept>
#include <string>

namespace tracematch {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Errors carrying a source position.
class SourceError : public Error {
public:
    SourceError(const std::string& what, int line, int column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

class SyntaxError : public SourceError {
public:
    using SourceError::SourceError;
};

/// A specification-only construct used in an implementation.
class RoleViolation : public SourceError {
public:
    using SourceError::SourceError;
};

/// Well-formed syntax that does not make sense (unknown function, writes to
/// nondeterministic variables, wrong arity...).
class SemanticError : public SourceError {
public:
    using SourceError::SourceError;
};

class RuntimeError : public Error {
public:
    using Error::Error;
};

class StepBudgetExceeded : public RuntimeError {
public:
    using RuntimeError::RuntimeError;
};

class RuntimeTypeError : public RuntimeError {
public:
    using RuntimeError::RuntimeError;
};

class IndexOutOfBounds : public RuntimeError {
public:
    using RuntimeError::RuntimeError;
};

class CustomEqualityError : public Error {
public:
    using Error::Error;
};

class EnumerationBudgetExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace tracematch
