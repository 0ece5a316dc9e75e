#pragma once

#include <stdexcept>
#include <string>

namespace schaper {

struct SchaperError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : SchaperError {
  using SchaperError::SchaperError;
};
struct NotAPartition : SchaperError {
  using SchaperError::SchaperError;
};
struct NotABijection : SchaperError {
  using SchaperError::SchaperError;
};
struct SizeMismatch : SchaperError {
  using SchaperError::SchaperError;
};
struct ShapeMismatch : SchaperError {
  using SchaperError::SchaperError;
};
struct NotComposable : SchaperError {
  using SchaperError::SchaperError;
};
struct HookOutsideDiagram : SchaperError {
  using SchaperError::SchaperError;
};
struct NotRowEquivalent : SchaperError {
  using SchaperError::SchaperError;
};
struct NotOddPrime : SchaperError {
  using SchaperError::SchaperError;
};
struct NotPRegular : SchaperError {
  using SchaperError::SchaperError;
};
struct MissingEntry : SchaperError {
  using SchaperError::SchaperError;
};
struct ZeroSchaper : SchaperError {
  using SchaperError::SchaperError;
};
struct SchemaError : SchaperError {
  using SchaperError::SchaperError;
};
struct CacheCorrupt : SchaperError {
  using SchaperError::SchaperError;
};

// Thrown when a computation would exceed its configured budget; carries which
// budget tripped so sweeps can record the partition as skipped.
struct ResourceLimit : SchaperError {
  using SchaperError::SchaperError;
};

} // namespace schaper
