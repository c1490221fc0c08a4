#ifndef OPINEQ_TOOLS_CLI_HPP
#define OPINEQ_TOOLS_CLI_HPP

// opineq-cli: verify, eval, scan, constants, replay.
// JSON and CSV go to stdout (or --out); human summaries to stderr.

#include <iosfwd>
#include <string>
#include <vector>

namespace opineq::cli {

/// args excludes the program name. Returns the process exit code:
/// 0 pass, 1 failed check or evaluation error, 2 usage error or unknown id.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace opineq::cli

#endif  // OPINEQ_TOOLS_CLI_HPP
