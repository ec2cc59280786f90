#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "els/arith.hpp"

namespace els::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kVerificationFailed = 2, kTripwire = 3 };

/// Entry point of the command-line tool. Subcommands: analyze, local, els,
/// terms, count, fit, verify.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

/// Convenience wrapper for tests; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "10000", "1e4" or "2.5e5" as an exact positive integer.
arith::u64 parse_count(const std::string& text);

}  // namespace els::cli
