#pragma once

#include <stdexcept>
#include <string>

namespace mhd2d {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Density perturbation left the small-data regime (|rho| > 1/2, or 1+rho <= 1/4).
class SmallnessViolation : public Error {
 public:
  using Error::Error;
};

class CflViolation : public Error {
 public:
  using Error::Error;
};

/// Grid too coarse for the requested alias-free computation.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

class EigenSolverError : public Error {
 public:
  using Error::Error;
};

class CheckpointError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(int line, std::string key, const std::string& what)
      : Error("config line " + std::to_string(line) + ", key '" + key + "': " + what),
        line_(line),
        key_(std::move(key)) {}

  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

}  // namespace mhd2d
