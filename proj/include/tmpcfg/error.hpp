#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tmpcfg {

// Base class for every domain error raised by the library. The CLI maps these
// to exit code 2 (usage problems are reported separately).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameters : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class LibraryMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class DegenerateShape : public Error {
 public:
  using Error::Error;
};

class UnsupportedFormat : public Error {
 public:
  using Error::Error;
};

class InvalidConfiguration : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  enum class Kind { LengthMismatch, BadCharacter };

  DecodeError(Kind kind, std::size_t position, const std::string& what)
      : Error(what), kind_(kind), position_(position) {}

  Kind kind() const noexcept { return kind_; }
  /// 1-based offending position for BadCharacter, decoded length otherwise.
  std::size_t position() const noexcept { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

}  // namespace tmpcfg
