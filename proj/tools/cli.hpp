#pragma once

#include <string>
#include <vector>

namespace curvedepth::cli {

// Exit codes: 0 success, 2 usage, 3 input parse/validation, 4 numerical
// degeneracy.
int run(const std::vector<std::string>& args);

}  // namespace curvedepth::cli
