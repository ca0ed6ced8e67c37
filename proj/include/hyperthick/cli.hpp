#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hyperthick::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Runs the command line (without the program name). Returns 0 on success,
/// 1 on a domain error or a failed verification suite, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperthick::cli
