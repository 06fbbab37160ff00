#pragma once
#include <iosfwd>
#include <string>
#include <vector>

namespace brel::cli {

/// Runs the command line (without the program name). Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

} // namespace brel::cli
