// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>

namespace powersum::cli {

enum ExitCode : int { kSuccess = 0, kVerdictFail = 1, kUsageError = 2 };

/// Runs one command line (`argv[0]` is the program name). "-" paths read from
/// `in` / write to `out`; diagnostics go to `err` as single lines.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace powersum::cli
