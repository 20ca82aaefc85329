#pragma once

#include <stdexcept>
#include <string>

namespace qdf {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad shapes, non-states, invalid permutations, ...
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Operands live on different algebras, or a map is used against its direction.
class MismatchError : public Error {
public:
    using Error::Error;
};

}  // namespace qdf
