#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jacstab::cli {

/// Exit statuses of the command-line tool.
enum Exit : int { kSuccess = 0, kFail = 1, kInputError = 2 };

/// Runs the tool on `args` (without the program name). Payloads and
/// structured diagnostics go to `out`, human-oriented messages to `err`,
/// and a graph given as "-" is read from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace jacstab::cli
