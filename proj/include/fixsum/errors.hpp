#pragma once

#include <stdexcept>
#include <string>

namespace fixsum {

/// Requested family id is not in the registry.
struct UnknownFamilyError : std::runtime_error {
  explicit UnknownFamilyError(const std::string& id)
      : std::runtime_error("unknown family: " + id) {}
};

/// Binomial inversion produced a negative term: the input sequence is not
/// exactly C-decomposable.
struct DecompositionViolation : std::runtime_error {
  explicit DecompositionViolation(const std::string& what)
      : std::runtime_error(what) {}
};

/// Brute-force enumeration requested beyond the family's configured bound.
struct TooLargeError : std::runtime_error {
  explicit TooLargeError(const std::string& what) : std::runtime_error(what) {}
};

/// A ratio whose denominator vanishes (e.g. f(n,n+1) = 0 in jump_ratio).
struct DegenerateError : std::runtime_error {
  explicit DegenerateError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Family has no uniform sampler.
struct UnsupportedFamilyError : std::runtime_error {
  explicit UnsupportedFamilyError(const std::string& id)
      : std::runtime_error("family does not support sampling: " + id) {}
};

}  // namespace fixsum
