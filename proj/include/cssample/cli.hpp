#pragma once
// Command-line surface: flag parsing, run manifests, and JSON report
// emission for every operation in the library.

#include <iosfwd>
#include <string>
#include <vector>

namespace css {

inline constexpr const char* kToolVersion = "0.1.0";

// Runs one invocation; args exclude the program name.  All reports go to
// `out` (headed by a run manifest), diagnostics to `err`.  Exit codes:
// 0 success, 1 ingestion or estimation failure, 2 usage error.
int dispatch(const std::vector<std::string>& args, std::istream& in,
             std::ostream& out, std::ostream& err);

}  // namespace css
