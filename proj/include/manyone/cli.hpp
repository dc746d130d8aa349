#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace manyone {

/// Runs one command line (without the program name). Exit codes: 0 for an
/// affirmative or verified result, 1 for a negative result or a violation,
/// 2 for input or usage errors and questions undecidable in the universe.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace manyone
