#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dyadicint::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kDomain = 2,
    kParse = 3,
    kVerification = 4,
};

/// Runs one command line (without the program name). Results go to `out`
/// (or to --out PATH), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "%.17g": shortest fixed-width rendering that round-trips every double.
std::string format_real(double v);

}  // namespace dyadicint::cli
