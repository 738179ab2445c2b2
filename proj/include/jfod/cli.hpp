#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace jfod::cli {

enum ExitCode : int {
    kSuccess = 0,
    kMalformedInput = 2,
    kInvariantViolation = 3,
    kCertificateFailure = 4,
};

// Entry point shared by the executable and the tests. args excludes the
// program name. Reports go to --out when given, otherwise to out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jfod::cli
