#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace linkexpr {

/// Broad failure category; the CLI maps each to a process exit code.
enum class ErrorKind { validation, numerical, io };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(ErrorKind::validation, what) {}
};

class ParseError : public ValidationError {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Exact automorphism search declined (graph above the node cap, or group too large to list).
class SearchRefused : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

class SingularCovariance : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegreesOfFreedomError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

int exit_code_for(ErrorKind kind) noexcept;

}  // namespace linkexpr
