#ifndef NORMREL_TOOLS_CLI_HPP_
#define NORMREL_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace normrel::cli {

  enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kLoadError = 3 };

  // args excludes the program name.
  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace normrel::cli

#endif  // NORMREL_TOOLS_CLI_HPP_
