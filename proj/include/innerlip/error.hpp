#pragma once

#include <stdexcept>
#include <string>

namespace innerlip {

/// Failure categories; the CLI maps each onto a process exit code.
enum class ErrorKind {
  usage,        // invalid arguments or configuration
  io,           // file format / filesystem problems
  convergence,  // fixed-point iteration did not reach its tolerance
  precondition, // an operation was called outside its admissible range
  hypothesis,   // a theorem's hypothesis is violated; check refused
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace innerlip
