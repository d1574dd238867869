#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gfai {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands built over different chains were combined.
class ChainMismatch : public Error {
 public:
  ChainMismatch() : Error("operands belong to different residuated chains") {}
  explicit ChainMismatch(const std::string& what) : Error(what) {}
};

/// Fuzzy sets over different attribute universes were combined.
class UniverseMismatch : public Error {
 public:
  UniverseMismatch() : Error("operands belong to different attribute universes") {}
  explicit UniverseMismatch(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// An input violates the documented precondition of an operation
/// (unsaturated or redundant theory, invalid hedge table, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed the configured cap.
class CapacityError : public Error {
 public:
  CapacityError(std::uint64_t required, std::uint64_t bound)
      : Error("enumeration of " + std::to_string(required) +
              " candidates exceeds the cap of " + std::to_string(bound)),
        required_(required),
        bound_(bound) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t bound() const noexcept { return bound_; }

 private:
  std::uint64_t required_;
  std::uint64_t bound_;
};

}  // namespace gfai
