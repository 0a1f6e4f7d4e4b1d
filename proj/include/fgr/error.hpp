#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fgr {

/// Base of every error the library throws on bad input or exhausted limits.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (bad labels, wrong vertex, unmet precondition).
class InputError : public Error {
public:
    using Error::Error;
};

/// Text that failed to parse; carries the 1-based line number when known (0 otherwise).
class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string& what)
        : InputError(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// An exhaustive enumeration would exceed its configured cap.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// Two independent computations disagreed, or an identity that must hold did not.
/// Always a bug (or a wrong convention), never a user error.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace fgr
