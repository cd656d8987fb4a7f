#pragma once

#include <stdexcept>
#include <string>

namespace morseforge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input text or simplex list is not well formed (duplicate vertex, bad token).
class MalformedInputError : public Error {
 public:
  using Error::Error;
};

/// Input contained no simplices.
class EmptyComplexError : public Error {
 public:
  using Error::Error;
};

/// Dimension or index argument outside the admissible range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Manifold mode requested on a complex that is not a closed pseudomanifold.
class ModeError : public Error {
 public:
  using Error::Error;
};

/// An internal structural guarantee was violated (cyclic field, broken dual graph).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

/// Generator parameters out of range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive search refused because the complex is larger than the cap.
class OracleCapError : public Error {
 public:
  using Error::Error;
};

}  // namespace morseforge
