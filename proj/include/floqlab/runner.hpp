#pragma once

#include <string>
#include <vector>

namespace floqlab::cli {

/// Batch front end. Exit codes: 0 success (and all suite checks green),
/// 1 failed checks, 2 configuration errors, 3 numerical failures.
int run(const std::vector<std::string>& args);

}  // namespace floqlab::cli
