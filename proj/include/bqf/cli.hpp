// Command-line front end. JSON goes to `out`, progress and errors to `err`.
// Exit codes: 0 success, 1 verification failure, 2 usage error.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bqf::cli {

inline constexpr int kOk = 0;
inline constexpr int kMismatch = 1;
inline constexpr int kUsage = 2;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bqf::cli
