#ifndef LMVAR_ERRORS_HPP
#define LMVAR_ERRORS_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace lmvar {

// Error taxonomy mirrors the CLI exit codes:
//   UsageError -> 1, ParseError/DataError -> 2, InternalError -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::optional<std::size_t> line() const { return line_; }

 private:
  std::optional<std::size_t> line_;
};

class DataError : public Error {
 public:
  using Error::Error;
};

// Correlation over a constant series; reported as missing, never as 0.
class UndefinedCorrelation : public DataError {
 public:
  using DataError::DataError;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace lmvar

#endif  // LMVAR_ERRORS_HPP
