#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dircomm::cli {

enum ExitCode : int { success = 0, runtime_failure = 1, usage_error = 2 };

/// Entry point of the `dircomm` tool. Subcommands: extract, evaluate,
/// benchmark, sweep, scaling. Returns the process exit code.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// Same, with args excluding the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// `<path>.summary.csv` next to a sweep CSV (a trailing ".csv" is replaced).
std::string summary_path(const std::string &csv_path);

} // namespace dircomm::cli
