#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace modcoh::cli {

// Runs one CLI invocation. Exit codes: 0 equal/commutes/ok, 1 not equal or
// not commuting, 2 coherence UNKNOWN in coherence-only mode, 3 parse,
// typing, or input error.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace modcoh::cli
