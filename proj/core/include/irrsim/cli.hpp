#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace irrsim {

// Exit codes returned by run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // runtime error, or violations found by `validate`
inline constexpr int kExitUsage = 2;

// Entry point of the irrsim tool; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace irrsim
