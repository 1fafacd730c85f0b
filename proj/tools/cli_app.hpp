#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace stardomain::cli {

enum ExitCode : int { kPass = 0, kInputError = 1, kVerificationFailure = 2 };

struct RunConfig {
    std::string command;
    std::string domain_path;
    double epsilon = 0.1;
    std::vector<double> eps_list{0.2, 0.1, 0.05};
    std::size_t rings = 16;
    std::size_t pairs = 100000;
    std::uint64_t seed = 0;
    std::string output_path; ///< empty: standard output
    std::string format;      ///< json or csv; empty picks the command default
};

/// Dispatch a parsed configuration. Errors are reported on `err` as one JSON
/// line and mapped to the exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parse arguments (argv[0] is the program name) and run.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace stardomain::cli
