#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diriop {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The argument map is not a disk automorphism.
struct NotAutomorphism : Error {
  using Error::Error;
};

/// The argument map (or a composition of arguments) is not a self-map of the disk.
struct NotSelfMap : Error {
  using Error::Error;
};

/// A precondition on numeric arguments failed (pole hit, boundary reached,
/// degenerate coefficients, identity where a non-identity map is required, ...).
struct DomainError : Error {
  using Error::Error;
};

/// Textual map specification could not be parsed; `position` is a 0-based
/// offset into the input string.
struct SpecParseError : Error {
  SpecParseError(const std::string& what, std::size_t pos)
      : Error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
  std::size_t position;
};

}  // namespace diriop
