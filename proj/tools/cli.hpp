#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rotquad::tools {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalid = 1,
  kExitDegenerate = 2,
  kExitVerifyFailed = 3,
  kExitInternal = 4,
};

/// The rotquad command line without argv[0]. Documents go to `out`, errors as
/// JSON objects to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rotquad::tools
