#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bsum::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kCapacity = 2,
    kCheckFailed = 3,
};

/// args excludes the program name. Reports go to `out` (or --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bsum::cli
