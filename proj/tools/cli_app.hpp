#pragma once

#include <string>
#include <vector>

namespace seqmix::cli {

/// Entry point behind the seqmix binary. Returns the process exit code:
/// 0 success, 2 configuration or input error, 3 numerical failure.
int run(const std::vector<std::string>& args);

}  // namespace seqmix::cli
