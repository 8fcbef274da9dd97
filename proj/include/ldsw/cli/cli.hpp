#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ldsw::cli {

// exit codes
constexpr int kComputed = 0;
constexpr int kNegative = 1;  // limit does not exist, or constraint violated
constexpr int kInconclusive = 2;
constexpr int kInputError = 3;

// args excludes the program name
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ldsw::cli
