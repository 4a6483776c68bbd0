#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twistlab::cli {

enum ExitCode { kOk = 0, kInputError = 2, kUnsupported = 3 };

/// Runs the command line tool; argv[0] is the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace twistlab::cli
