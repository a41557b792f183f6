#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace repfam {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kExitOk = 0,
    kExitNo = 1,        // a decision problem answered "no", or a check failed
    kExitInput = 2,     // bad flags, unreadable or malformed input
    kExitResource = 3,  // a size or work budget would be exceeded
};

/// Runs one subcommand (argv[0] is the program name) and writes its report
/// to `out`; diagnostics go to `err`.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with the arguments after the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace repfam
