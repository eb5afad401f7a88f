#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gapwalk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitSafetyCap = 3;

/// Environment variable holding the default safety cap.
inline constexpr const char* kSafetyCapEnv = "GAPWALK_SAFETY_CAP";

/// args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gapwalk::cli
