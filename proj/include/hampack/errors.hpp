#pragma once

#include <stdexcept>
#include <string>

namespace hampack {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operands disagree on the vertex count.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// Malformed input: not a permutation, not a perfect matching, vertex outside a set, ...
class InvalidInputError : public Error {
public:
  using Error::Error;
};

/// Probability parameters outside the admissible window of the selected mode.
class ParameterRangeError : public Error {
public:
  using Error::Error;
};

/// Instance too small or too large for an exhaustive routine.
class SizeError : public Error {
public:
  using Error::Error;
};

/// A rotation pivot that does not lie in the required quarter of the path.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Internal bookkeeping disagrees with itself. Always a bug.
class ConsistencyError : public Error {
public:
  using Error::Error;
};

} // namespace hampack
