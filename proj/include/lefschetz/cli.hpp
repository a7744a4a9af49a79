// Command-line front end.
//
// Exit codes: 0 when a result or verdict was computed, 1 when a
// verification or expected-value check failed, 2 on bad input.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lefschetz::cli {

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lefschetz::cli
