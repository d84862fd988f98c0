#pragma once

#include <string>
#include <vector>

namespace stbc {

/// Front-end over the toolkit: construct | check | mindet | optimize-angle |
/// simulate | power. Returns the process exit code (0 success, 2 usage
/// errors, 1 anything else) and prints a machine-parsable "error: ..." line
/// on failure.
int run_cli(const std::vector<std::string>& args);

} // namespace stbc
