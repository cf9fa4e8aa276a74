#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

#include "innerlip/error.hpp"

namespace innerlip::cli {

/// Settings shared by the subcommands. Filled from a flat `key = value` file and then
/// from command-line flags, which take precedence.
struct RunConfig {
  std::string command;
  std::string structure;
  std::string h;  // gallery:NAME or a .cf64 path
  double A = 4.0;
  std::size_t n = 0;  // 0: command default
  double tol = 0.0;
  int max_iter = 60;
  std::string rho = "auto";
  int m = 0;  // 0: command default
  std::string out;
  std::uint64_t seed = 1;
  std::size_t pairs = 10000;
  double fault_multiplier_scale = 1.0;

  /// Applies one key; throws Error(usage) on unknown keys or out-of-range values.
  void set(const std::string& key, const std::string& value);
  void validate() const;
};

/// Parses `key = value` lines; `#` starts a comment. Throws Error(usage) naming the line.
std::map<std::string, std::string> parse_config(const std::string& text, const std::string& source = "<config>");

int exit_code(ErrorKind kind);

/// Entry point of the `innerlip` tool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace innerlip::cli
