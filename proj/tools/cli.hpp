#pragma once

#include <string>
#include <vector>

namespace fgr::cli {

/// Exit codes of fatgraph-reembed.
enum ExitCode : int {
    kOk = 0,
    /// A checked condition failed (e.g. "not minimum genus").
    kConditionFailed = 1,
    kInputError = 2,
    kCapExceeded = 3,
};

struct CommandResult {
    int exit_code = kOk;
    std::string out;
    std::string err;
};

/// Runs one command line; `args` excludes the program name. `cap_env` is the value of
/// FGR_CAP (empty when unset).
CommandResult run(const std::vector<std::string>& args, const std::string& cap_env = "");

} // namespace fgr::cli
