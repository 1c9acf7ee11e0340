#pragma once

#include <stdexcept>
#include <string>

namespace rfiqkd {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of a function.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A correlation cell has no samples.
class UndefinedCellError : public Error {
public:
  using Error::Error;
};

/// QBER is above the range where the frame-independent bound on Eve holds.
class ApplicabilityError : public Error {
public:
  using Error::Error;
};

/// Estimates violate an algebraic bound by more than statistics allow.
class DataIntegrityError : public Error {
public:
  using Error::Error;
};

/// A stateful object was used against its calling contract.
class ContractViolation : public Error {
public:
  using Error::Error;
};

/// Invalid scenario configuration. `field()` names the offending key.
class ConfigError : public Error {
public:
  ConfigError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

/// File could not be read or written. `path()` names the file.
class IoError : public Error {
public:
  IoError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

private:
  std::string path_;
};

}  // namespace rfiqkd
