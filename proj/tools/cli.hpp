#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace quadcohom::cli {

enum ExitCode : int { ok = 0, verification_failed = 1, invalid_input = 2 };

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace quadcohom::cli
