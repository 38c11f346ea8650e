#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace replete::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kPrecision = 2,
  kCheckFailed = 3,
  kIo = 4,
};

// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace replete::cli
