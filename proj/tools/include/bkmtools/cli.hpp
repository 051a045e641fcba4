#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bkm::cli {

// Exit codes of the bkm tool.
enum Exit : int { kOk = 0, kVerifyFailed = 1, kInputError = 2, kBudget = 3 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bkm::cli
