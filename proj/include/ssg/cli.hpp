#ifndef SSG_CLI_HPP
#define SSG_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace ssg {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  /// A mathematical verdict came out negative: Fails, violations found.
  kExitFails = 1,
  /// Usage or input errors; details on stderr.
  kExitDiagnostic = 2,
  kExitBudget = 3,
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ssg

#endif  // SSG_CLI_HPP
