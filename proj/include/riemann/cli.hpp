#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace riemann::cli {

/// Runs one CLI invocation (args exclude the program name). Input documents
/// come from the positional file argument or from `in` when the argument is
/// absent or "-". Exit codes: 0 answered (including "not realizable"),
/// 1 search exhaustion or numerical failure, 2 malformed input or usage.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace riemann::cli
