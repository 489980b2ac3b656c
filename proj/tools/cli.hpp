#ifndef GCX_TOOLS_CLI_HPP
#define GCX_TOOLS_CLI_HPP

#include "gcx/complexity.hpp"
#include "gcx/errors.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace gcx::cli {

enum class Format { text, csv, structured };

/// A parsed invocation. Fields not used by the verb stay empty.
struct Command {
  std::string verb;
  std::string word_spec;
  /// A fixed group (orbits, epsilon, scan-conjugates) or a per-n rule
  /// (complexity-table, verify-theorem1).
  std::string group_spec;
  std::size_t n_lo = 0;
  std::size_t n_hi = 0;
  std::string abelian;
  std::string perm;
  std::string central;
  Format format = Format::text;
  bool timing = false;
  /// The arguments as typed, for the output header.
  std::string echo;
};

class usage_error : public input_error {
public:
  using input_error::input_error;
};

struct RunReport {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Parses the arguments after the program name. Throws usage_error.
Command parse_command(std::vector<std::string> const &args);

/// Exit codes: 0 success, 1 a verification came out false, 2 bad input.
RunReport execute(Command const &cmd);

/// parse_command followed by execute, with errors mapped to exit codes.
RunReport run(std::vector<std::string> const &args);

/// Per-n group rule: `id`, `sym`, `cyc`, `abc:a,b,c`, cycle notation, or
/// `file:PATH` whose lines read "n <group spec>".
GroupSequence group_rule(std::string const &rule);

} // namespace gcx::cli

#endif // GCX_TOOLS_CLI_HPP
