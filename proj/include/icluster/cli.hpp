#pragma once

#include <string>
#include <vector>

namespace icluster::cli {

/// Entry point shared by the binary and the tests; `args` excludes the
/// program name. Returns the exit code: 0 on success, 1 on input errors,
/// 2 when a beta-ic `cluster` run ends below the requested beta.
int run(std::vector<std::string> args);

}  // namespace icluster::cli
