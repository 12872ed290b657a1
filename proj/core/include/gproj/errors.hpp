#pragma once

#include <stdexcept>

namespace gproj {

// Base class for all errors thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A probability entry below the admissible floor (distributions must be
// interior points of the simplex).
struct ZeroProbability : Error {
  using Error::Error;
};

// Operands of incompatible dimension (outcome count or basis size).
struct DimensionMismatch : Error {
  using Error::Error;
};

// A probability vector that is not a distribution (wrong length, bad sum).
struct InvalidDistribution : Error {
  using Error::Error;
};

// A coordinate vector of the wrong kind or outside its admissible range.
struct InvalidCoordinates : Error {
  using Error::Error;
};

// A scalar argument outside its documented range.
struct OutOfRange : Error {
  using Error::Error;
};

// A weight update that would leave the open simplex.
struct OutOfSimplex : Error {
  using Error::Error;
};

// Component-wise reduction requested at a weight too close to 1; the
// antipode of that component is undefined.
struct DegeneratePencil : Error {
  using Error::Error;
};

// A multiplicative update produced a weight below the underflow guard.
struct NumericalUnderflow : Error {
  using Error::Error;
};

// An exhaustive search whose lattice would exceed the evaluation budget.
struct BudgetExceeded : Error {
  using Error::Error;
};

// A matrix column with no mass; it cannot be normalized.
struct ZeroColumn : Error {
  using Error::Error;
};

// Factorization rank incompatible with the matrix dimensions.
struct RankTooLarge : Error {
  using Error::Error;
};

// Malformed input file; the message carries the offending field path.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace gproj
