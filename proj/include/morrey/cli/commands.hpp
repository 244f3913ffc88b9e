#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace morrey::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kValidation = 2,
    kUnexpectedDivergence = 3,
};

struct RunOptions {
    std::string command;
    std::string config_file;
    std::string out_dir = ".";
    int threads = 1;
    std::uint64_t seed = 0;  ///< accepted but unused: no computation is randomized
};

const std::vector<std::string>& command_names();

/// Runs one command; reports go to out_dir, diagnostics to `err`, a one-line
/// summary to `out`. Returns an ExitCode.
int run(const RunOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace morrey::cli
