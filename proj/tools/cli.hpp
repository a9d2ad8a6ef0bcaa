#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace affina::cli {

/// Runs one command. `args` excludes the program name. Exit codes: 0 on
/// success or a true verdict, 1 on a false verdict, refutation or failure
/// witness, 2 on usage, parse or precondition errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace affina::cli
