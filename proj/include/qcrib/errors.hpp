#pragma once

#include <stdexcept>
#include <string>

namespace qcrib {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input data violates a file schema or structural precondition
/// (duplicate ids, dangling references, non-closed sieves, ...).
struct MalformedInputError : Error {
  using Error::Error;
};

/// A named element/object/morphism does not exist in the given structure.
struct UnknownElementError : MalformedInputError {
  using MalformedInputError::MalformedInputError;
};

/// An operation was called with incompatible arguments
/// (object mismatch, missing involution, ...).
struct ArgumentError : Error {
  using Error::Error;
};

/// An enumeration exceeded the configured bound. Carries the bound so
/// callers can report it.
struct ResourceBoundError : Error {
  std::size_t bound;
  ResourceBoundError(const std::string& msg, std::size_t b) : Error(msg), bound(b) {}
};

/// A condition that is mathematically guaranteed failed to hold;
/// indicates a bug, never a property of the input.
struct InternalConsistencyError : Error {
  using Error::Error;
};

}  // namespace qcrib
