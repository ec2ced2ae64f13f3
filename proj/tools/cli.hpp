#pragma once

// The thetalab command line, callable in-process for tests.
//
// Exit codes: 0 success, 2 usage or input error, 3 numerical ambiguity or
// non-convergence, 4 failed verification.

#include <ostream>
#include <string>
#include <vector>

namespace thetalab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitAmbiguity = 3;
inline constexpr int kExitVerification = 4;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thetalab::cli
