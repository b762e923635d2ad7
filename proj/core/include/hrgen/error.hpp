#pragma once

#include <stdexcept>
#include <string>

namespace hrgen {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: bad JSON, unknown labels, precondition violations on
// caller-supplied data.
class InputError : public Error {
public:
    using Error::Error;
};

// A size or index outside the supported/allowed range.
class RangeError : public Error {
public:
    using Error::Error;
};

// An internal consistency check failed. Always a bug, never bad input.
class InvariantBreach : public Error {
public:
    using Error::Error;
};

}  // namespace hrgen
