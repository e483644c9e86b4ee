#pragma once

#include <stdexcept>
#include <string>

namespace bellcord {

// Failure taxonomy shared by the C++ core and the C API.  Every throwing
// operation in the library throws Error with one of these codes; nothing
// else escapes across the public boundary.
enum class ErrorCode {
  domain,       // argument outside the mathematical domain of the operation
  size,         // argument exceeds a documented size/cap limit
  precision,    // requested precision unattainable or below the minimum
  no_converge,  // iteration/series failed to meet its certificate
  budget,       // work estimate exceeds the configured budget
  invalid,      // malformed input (bad enum string, bad config, bad handle use)
  internal,     // invariant violation inside the library
};

const char* error_code_name(ErrorCode c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg),
        code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) noexcept {
  switch (c) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::size: return "size";
    case ErrorCode::precision: return "precision";
    case ErrorCode::no_converge: return "no_converge";
    case ErrorCode::budget: return "budget";
    case ErrorCode::invalid: return "invalid";
    case ErrorCode::internal: return "internal";
  }
  return "internal";
}

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) {
  throw Error(c, msg);
}

inline void require(bool cond, ErrorCode c, const std::string& msg) {
  if (!cond) throw Error(c, msg);
}

}  // namespace bellcord
