#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mpgmres {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A HIGH value does not fit in the LOW range.
class PrecisionOverflowError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class FactorizationError : public Error {
 public:
  FactorizationError(std::size_t row, const std::string& what)
      : Error("ILU(0) failed at row " + std::to_string(row) + ": " + what), row_(row) {}

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

inline void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": size mismatch (" + std::to_string(a) + " vs " +
                         std::to_string(b) + ")");
  }
}

}  // namespace mpgmres
