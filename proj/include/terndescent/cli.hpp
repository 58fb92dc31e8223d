#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace terndescent::cli {

inline constexpr const char* tool_name = "tern-descent";
inline constexpr const char* tool_version = "0.1.0";

/// Exit codes: positive verdict (or informational command), negative verdict,
/// any error.
inline constexpr int exit_positive = 0;
inline constexpr int exit_error = 1;
inline constexpr int exit_negative = 2;

struct CommandInfo {
  std::string name;
  /// The engine operation the subcommand runs.
  std::string operation;
  std::string summary;
};

const std::vector<CommandInfo>& dispatch_table();

/// Runs one command line (without the program name). Reports go to `out`
/// (or to --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace terndescent::cli
