#pragma once

// Subcommand front end: expand, pdot, radu, sturm, check.

#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdot::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailed = 1, kUsage = 2 };

/// A parsed command line. Boolean flags map to an empty string.
struct Invocation {
  std::string subcommand;
  std::map<std::string, std::string> flags;

  bool has(const std::string& flag) const { return flags.count(flag) != 0; }
  bool operator==(const Invocation&) const = default;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by parse when --help was requested; what() holds the usage text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> subcommands();

/// args excludes the program name. Throws UsageError or HelpRequested.
Invocation parse(const std::vector<std::string>& args);

/// Inverse of parse: parse(render(inv)) == inv for valid invocations.
std::vector<std::string> render(const Invocation& inv);

int dispatch(const Invocation& inv, std::ostream& out, std::ostream& err);

/// parse + dispatch with exit-code mapping for usage errors and help.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pdot::cli
