#pragma once

#include <stdexcept>
#include <string>

namespace gould {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Two values referencing different universes were combined.
struct UniverseMismatchError : Error {
  using Error::Error;
};

// A construction violated a container invariant (bad partition, negative
// measure value, m(empty) != 0, set not a union of blocks, ...).
struct ValidationError : Error {
  using Error::Error;
};

// An enumeration would exceed the configured block-count limit.
struct SizeLimitError : Error {
  using Error::Error;
};

// A checked hypothesis of an operation does not hold for the given input.
struct HypothesisError : Error {
  std::string property;
  HypothesisError(std::string prop, const std::string& what)
      : Error(what), property(std::move(prop)) {}
};

// Inputs passed the hypothesis checks but the operation found them
// structurally inconsistent (should not happen for honest inputs).
struct StructureError : Error {
  using Error::Error;
};

// A function is not measurable where the operation requires it
// (distinct values inside one block).
struct MeasurabilityError : Error {
  using Error::Error;
};

} // namespace gould
