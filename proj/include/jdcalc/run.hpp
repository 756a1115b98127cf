#pragma once

#include <string>
#include <vector>

namespace jdcalc {

/// Runs one CLI command (argv without the program name) and captures the
/// report. Exit status: 0 = all checks pass, 1 = a verification verdict
/// failed, 2 = input or parse error.
struct RunResult {
    int exit_code = 0;
    std::string output;
};

RunResult run_command(const std::vector<std::string>& args);

} // namespace jdcalc
