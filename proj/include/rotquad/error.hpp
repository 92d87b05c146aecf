#pragma once

#include <stdexcept>
#include <string>

namespace rotquad {

enum class ErrorKind {
  InvalidInput,  // malformed data or violated precondition
  Degenerate,    // configuration outside the generic case
  Internal,      // a self-consistency check failed
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput:
      return "invalid_input";
    case ErrorKind::Degenerate:
      return "degenerate";
    case ErrorKind::Internal:
      return "internal";
  }
  return "unknown";
}

}  // namespace rotquad
