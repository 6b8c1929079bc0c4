#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace freediv {

/// Failure categories; the CLI maps each one to its own exit status.
enum class ErrorKind { Parse, Precondition, Verification, CrossCheck };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(ErrorKind::Parse, what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(ErrorKind::Precondition, what) {}
};

class VerificationError : public Error {
 public:
  explicit VerificationError(const std::string& what) : Error(ErrorKind::Verification, what) {}
};

// Raised when two independent computations of the same quantity disagree.
class CrossCheckError : public Error {
 public:
  explicit CrossCheckError(const std::string& what) : Error(ErrorKind::CrossCheck, what) {}
};

}  // namespace freediv
