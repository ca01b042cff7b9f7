#pragma once

#include <stdexcept>
#include <string>

namespace spikewave {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition of an operation was not met by the caller.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace spikewave
