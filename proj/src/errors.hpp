#pragma once

#include <stdexcept>
#include <string>

namespace tpf {

// Maps one-to-one onto the process exit codes exposed by the CLI.
enum class ErrorKind {
  kUsage = 1,       // malformed input, unknown key, unreadable file
  kValidation = 2,  // precondition or gain-condition failure
  kNumerical = 3,   // integration abort
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_usage(const std::string& msg) {
  throw Error(ErrorKind::kUsage, msg);
}

[[noreturn]] inline void fail_validation(const std::string& msg) {
  throw Error(ErrorKind::kValidation, msg);
}

}  // namespace tpf
