#pragma once

#include <stdexcept>
#include <string>

namespace quatsys {

// Malformed input: bad file, bad flag value, precondition on user data.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A configured search/memory cap was hit, or precision ran out.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A mathematical invariant failed. Always carries the witness in what().
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace quatsys
