#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace planar_oracle::cli {

enum ExitCode : int { ok = 0, mismatch = 1, usage = 2, io_error = 3, invalid_input = 4 };

// args excludes the program name. Subcommands: gen build query verify bench dyn.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace planar_oracle::cli
