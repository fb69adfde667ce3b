#pragma once

#include <string>
#include <vector>

namespace visnet::cli {

// Full command-line surface: subcommands indicator, mark, extremes,
// evaluate, sweep, synth, network. Returns the process exit code
// (0 ok, 1 usage, 2 data/precondition, 3 internal).
int run(const std::vector<std::string>& args);

int run(int argc, const char* const* argv);

}  // namespace visnet::cli
