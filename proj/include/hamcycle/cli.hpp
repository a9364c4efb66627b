#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hamcycle {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidInput = 1,
  kExitInvariantFailure = 2,
};

// Runs one subcommand. args[0] is the program name. Results go to `out`
// (or to --out files), diagnostics to `err`.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// FNV-1a 64-bit digest of a file's bytes, as 16 hex digits.
std::string file_digest(const std::string& path);

}  // namespace hamcycle
