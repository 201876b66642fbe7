#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace subshift::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kInvalid = 2 };

/// Runs one command line (without the program name). Reports go to `out`
/// unless --out names a file; diagnostics go to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace subshift::cli
