#pragma once

#include <string>
#include <vector>

namespace twistkit::cli {

// Run the command line tool; returns the exit code and fills `out` with the
// textual output (reports print as JSON). Exposed as a library call so tests
// can assert byte-identical reports.
int run_cli(const std::vector<std::string>& args, std::string& out);

}  // namespace twistkit::cli
