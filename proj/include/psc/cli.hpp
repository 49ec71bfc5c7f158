#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace psc::cli {

/// Exit code for a false boolean result under --strict.
inline constexpr int kFalseExitCode = 3;

/// Entry point shared by the `psc` binary and the tests. args excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace psc::cli
