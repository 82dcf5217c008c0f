#pragma once

#include <stdexcept>
#include <string>

namespace superlin {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structural misuse: mismatched variable counts, shapes, index ranges.
struct DimensionMismatch : Error {
  using Error::Error;
};

struct SingularMatrix : Error {
  using Error::Error;
};

// extend_basis received linearly dependent input vectors.
struct DegenerateBasis : Error {
  using Error::Error;
};

// Operation requires a single visible observable (G of the form gbar * e1^T).
struct NotSingleVisible : Error {
  using Error::Error;
};

// Canonicalization requires hidden-observable degrees bounded by visible ones.
struct NotBalanced : Error {
  using Error::Error;
};

// The computed change of basis failed an exact block-zero invariant.
struct BlockStructureViolation : Error {
  using Error::Error;
};

// Observable reduction would need to merge dependent visible observables.
struct UnsupportedReduction : Error {
  using Error::Error;
};

// Discovery requires a constant control field.
struct UnsupportedControlField : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct SchemaError : Error {
  using Error::Error;
};

// Numerical integration left the finite range.
struct DivergenceError : Error {
  DivergenceError(const std::string& what, double when)
      : Error(what), time(when) {}
  double time;
};

}  // namespace superlin
