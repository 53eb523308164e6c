#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nq::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;  // check failure, Unknown, no countermodel, not properly closed
inline constexpr int kInputError = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nq::cli
