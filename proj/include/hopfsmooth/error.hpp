#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hopfsmooth {

/// Coarse failure classes. The CLI maps these onto exit codes.
enum class ErrorClass { Input, ResourceLimit, Invariant };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, std::string code, const std::string& what)
      : std::runtime_error(what), cls_(cls), code_(std::move(code)) {}

  ErrorClass error_class() const noexcept { return cls_; }
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorClass cls_;
  std::string code_;
};

class InputError : public Error {
 public:
  InputError(std::string code, const std::string& what)
      : Error(ErrorClass::Input, std::move(code), what) {}
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError("ParseError", what + " at column " + std::to_string(position + 1)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class ResourceLimitExceeded : public Error {
 public:
  explicit ResourceLimitExceeded(const std::string& what)
      : Error(ErrorClass::ResourceLimit, "ResourceLimit", what) {}
};

class InvariantViolation : public Error {
 public:
  InvariantViolation(std::string code, const std::string& what)
      : Error(ErrorClass::Invariant, std::move(code), what) {}
};

}  // namespace hopfsmooth
