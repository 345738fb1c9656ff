#pragma once

#include <string>
#include <vector>

namespace cqed {

// Full command-line front end; returns the process exit code
// (0 success, 1 configuration/usage error, 2 numerical/truncation error).
int cli_main(const std::vector<std::string>& args);

}  // namespace cqed
