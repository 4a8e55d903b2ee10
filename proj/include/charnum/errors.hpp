#pragma once

#include <stdexcept>
#include <string>

namespace charnum {

enum class ErrorCode {
  InfiniteFamily,
  NoPivot,
  Parse,
  Integrity,
  Unsupported,
  InvalidArgument,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace charnum
