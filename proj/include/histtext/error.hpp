#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace histtext {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  IoError,
  DuplicateId,
  EmptyDocument,
  Capacity,
  NotFound,
  Conflict,
  VersionMismatch,
  Undefined,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a code so the HTTP layer can
// map it onto a status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace histtext
