#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bqmod::cli {

// Runs one command; `args` excludes the program name. Returns 0 on success,
// 1 on domain errors, 2 on usage or parse errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bqmod::cli
