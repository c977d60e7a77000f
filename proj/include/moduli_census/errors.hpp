#pragma once

#include <stdexcept>
#include <string>

namespace census {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidCharacteristicError : public Error {
 public:
  using Error::Error;
};

/// A requested field, enumeration or table exceeds the configured size budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Input outside an operation's mathematical domain (pole, genus too small, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class FieldMismatchError : public Error {
 public:
  using Error::Error;
};

/// A cross-route check or an invariant that must hold failed. Indicates a bug.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  IoError(const std::string& what, std::string path) : Error(what + ": " + path), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at index " + std::to_string(position) + ")"), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace census
