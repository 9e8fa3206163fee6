#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cyclorank {

// Precondition violated by the caller (bad N, p, method, range, ...).
// The CLI maps this to exit code 1.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A value left the 64-bit range the kernels are built for.
class ArithmeticError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

// Broken internal invariant; indicates a bug, never bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// File could not be opened, read or written. CLI exit code 2.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace cyclorank
