#pragma once

#include <stdexcept>
#include <string>

namespace sle {

// Failure categories. The numeric values are the C API status codes and the
// CLI exit codes, so they must stay stable.
enum class ErrorCode {
  ok = 0,
  io = 1,       // file missing / unreadable / unwritable
  parse = 2,    // config text is not valid JSON
  invalid = 3,  // config or argument fails validation
  cfl = 4,      // CFL violation in strict mode
  numeric = 5,  // NaN/Inf encountered in state or forces
  internal = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace sle
