#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace papc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// `tau` used as the action of a prefix.
class TauInPrefix : public SyntaxError {
 public:
  TauInPrefix(std::size_t line, std::size_t column);
};

class ComplementOfTau : public Error {
 public:
  ComplementOfTau() : Error("tau has no complement") {}
};

class DuplicateDefinition : public Error {
 public:
  explicit DuplicateDefinition(const std::string& name)
      : Error("duplicate definition of constant '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class IdentifierCollision : public Error {
 public:
  using Error::Error;
};

/// A frozen (running) prefix placed where only a pure process is allowed.
class IllFormedPlacement : public Error {
 public:
  using Error::Error;
};

/// Raised when interrupt enumeration would exceed the configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Unfolding a constant re-entered itself without passing a prefix.
class UnguardedRecursion : public Error {
 public:
  explicit UnguardedRecursion(const std::string& name)
      : Error("unguarded recursion through constant '" + name + "'") {}
};

}  // namespace papc
