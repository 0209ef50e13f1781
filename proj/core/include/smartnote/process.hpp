#pragma once

#include <string>
#include <vector>

namespace smartnote {

struct ProcessResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

/// Runs argv[0] (PATH lookup) without a shell and captures both streams.
/// Throws smartnote::Error if the process cannot be started.
ProcessResult run_process(const std::vector<std::string>& argv);

}  // namespace smartnote
