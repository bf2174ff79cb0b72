#pragma once

#include <string>
#include <vector>

namespace atmscore {

// Runs the full CLI in-process. Returns the process exit code:
// 0 success, 1 validation/schema, 2 I/O, 3 domain/numeric.
int run_cli(const std::vector<std::string>& args);

}  // namespace atmscore
