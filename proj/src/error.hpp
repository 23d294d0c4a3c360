#pragma once

#include <stdexcept>
#include <string>

namespace hc {

// Error categories; numeric values match the hc_status codes of the C API.
enum class Err : int {
  invalid_argument = 1,
  parse = 2,
  domain = 3,
  budget = 4,
  unsaturated = 5,
  io = 6,
  bound = 7,
  internal = 8,
};

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace hc
