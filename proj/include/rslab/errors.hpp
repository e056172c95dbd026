#pragma once

#include <stdexcept>
#include <string>

namespace rslab {

// Base for every error raised by the library. The CLI maps the concrete
// types onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments or configuration supplied by the caller.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of a function (e.g. p ∉ (0,1)).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Iterative numerics failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Input shorter than the minimum a statistical test supports.
class InputSizeError : public Error {
 public:
  using Error::Error;
};

// Zero variance or otherwise unusable sample.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace rslab
