#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace swsc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not conform.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A caller-supplied parameter is out of its valid range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// An iterative method failed to converge, or a value left its representable range.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Malformed bytes on disk. Carries the offset at which decoding failed.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::uint64_t offset)
      : Error(what + " (at byte offset " + std::to_string(offset) + ")"), offset_(offset) {}

  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

/// A file could not be opened, read, or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A structurally valid object whose parts disagree with each other.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

}  // namespace swsc
