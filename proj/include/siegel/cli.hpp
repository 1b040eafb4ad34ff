#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace siegel {

inline constexpr int kExitPass = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitInvalidConfig = 2;

/// Run one `siegel_verify` invocation. `args` excludes the program name.
/// Report goes to `out` (or --output), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// One-line description of a claim id, used in failure messages.
std::string describe_claim(const std::string& claim);

}  // namespace siegel
