#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bkhopf::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInvalidInput = 1;
inline constexpr int kVerificationFailed = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bkhopf::cli
