#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace projdim {

struct RunConfig {
  std::string subcommand;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: hardware parallelism
  std::string format = "csv";
  double log_base = 0.0;  // 0 means e
  std::string out;        // empty: stdout
  std::vector<std::string> argv;
};

/// Runs the command line in args (args[0] is the program name). Returns 0 on
/// success, 2 for invalid input or configuration, 3 for numerical failures.
/// Errors are written to err as one JSON object.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace projdim
