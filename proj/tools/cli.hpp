#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gps::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;  // unconverged state or reproduce cell out of tolerance
inline constexpr int kConfig = 2;  // bad arguments or missing data file

/// Runs the command line `args` (args[0] is the program name). Results go to
/// `out` unless --out names a file; messages go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gps::cli
