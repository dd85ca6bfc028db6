#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lorentzcc::cli {

/// Exit codes of the command-line tool.
enum Exit : int { ok = 0, verify_failed = 1, invalid_input = 2 };

/// Runs the tool on args (without the program name). Primary output goes to
/// out unless --out names a file; diagnostics and error json go to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace lorentzcc::cli
