#pragma once

#include <stdexcept>
#include <string>

namespace singinv {

/// Bad input: syntax errors, unknown identifiers, shape mismatches.
/// Maps to CLI exit code 1.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : InputError(msg + " (at position " + std::to_string(pos) + ")"),
          pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

/// Mathematically undefined outcome: pole, degenerate form, construction
/// inapplicable.  Maps to CLI exit code 2.
class UndefinedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Internal consistency failure (non-confluent reduction, associativity
/// violation).  Maps to CLI exit code 3.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace singinv
