#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cantordim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitConfig = 2;

/// Environment variable holding the default working precision.
inline constexpr const char* kPrecisionEnv = "CANTORDIM_PRECISION";

/// Runs one subcommand. `args` excludes the program name. Reports go to `out`
/// (or the --out file), diagnostics and warnings to `err`. Restores the
/// working precision on return.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cantordim::cli
