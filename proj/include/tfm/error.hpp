#pragma once

#include <stdexcept>
#include <string>

namespace tfm {

// Base for every error raised by the library. `component()` names the module
// that raised it so the CLI can report where a run failed.
class Error : public std::runtime_error {
 public:
  Error(std::string component, const std::string& what)
      : std::runtime_error(component + ": " + what), component_(std::move(component)) {}

  const std::string& component() const { return component_; }

 private:
  std::string component_;
};

// Argument outside the mathematical domain of an operation (sigma <= 0, k' outside (0,1), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Fields defined on incompatible grids.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Input that carries no information (all-zero taps, zero JSA, empty weights).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// A documented precondition was violated by the caller (unnormalized JSA, non-unit trace).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Linear solve or decomposition failed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Configuration could not be read or validated. `key()` is the offending config path.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error("config", key.empty() ? what : "'" + key + "': " + what), key_(std::move(key)) {}

  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

}  // namespace tfm
