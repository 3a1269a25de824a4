#pragma once

#include <stdexcept>
#include <string>

namespace spectro {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// A model constructor was given parameters outside its domain (e.g. L < 2).
class InvalidModel : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid-model"; }
};

/// Dense oracles are capped at a fixed qubit count.
class OracleCapacity : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "oracle-capacity"; }
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid-argument"; }
};

/// The perturbative closed form was evaluated inside a pole guard band.
class PoleProximity : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "pole-proximity"; }
};

/// Malformed or inconsistent experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "config"; }
};

}  // namespace spectro
