#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nset {

inline constexpr const char* k_version = "0.1.0";

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    k_exit_ok = 0,       // success or witness
    k_exit_negative = 1, // UNSAT, not confined, not stabilized
    k_exit_usage = 2,    // usage or schema error
};

/// Runs one command line (args excludes the program name). Prints exactly
/// one JSON document to `out` on success; diagnostics go to `err`. Input
/// paths given as "-" are read from `in`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

} // namespace nset
