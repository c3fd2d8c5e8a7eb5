#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mebkit {

inline constexpr const char* kToolVersion = "mebkit/0.1.0";

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInput = 2, kExitCompute = 3 };

// Runs one meb-kit invocation. `args` excludes the program name. The report
// (or error payload) goes to `out` unless --output names a file; diagnostics
// go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mebkit
