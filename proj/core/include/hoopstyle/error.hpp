#pragma once

#include <stdexcept>
#include <string>

namespace hoopstyle {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file or document. `where` names the file/line/record.
class ParseError : public Error {
 public:
  ParseError(std::string where, const std::string& what)
      : Error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Input violates a documented precondition (shapes, ranges, sums).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Records are well-formed but inconsistent with each other.
class DataError : public Error {
 public:
  using Error::Error;
};

class FeatureExtractionError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace hoopstyle
