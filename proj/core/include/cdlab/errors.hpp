#pragma once

#include <stdexcept>
#include <string>

namespace cdlab {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An index (or whole vector) does not belong to the expected index domain.
class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

/// Malformed caller input: duplicate indices, wrong arity, invalid parameter.
class InputError : public Error {
public:
  explicit InputError(const std::string& what) : Error(what) {}
};

/// A weight query violated the sequence's declared floor or bound.
class WeightError : public Error {
public:
  explicit WeightError(const std::string& what) : Error(what) {}
};

/// A log-domain coefficient does not fit in a double at the output boundary.
class OverflowError : public Error {
public:
  explicit OverflowError(const std::string& what) : Error(what) {}
};

/// Config file failed validation; `path` points at the offending field.
class ConfigError : public Error {
public:
  ConfigError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

private:
  std::string path_;
};

}  // namespace cdlab
