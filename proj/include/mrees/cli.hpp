#ifndef MREES_CLI_HPP
#define MREES_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace mrees {

/// Exit codes: 0 pass, 1 verification failure, 2 invalid input, 3 cap exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace mrees

#endif  // MREES_CLI_HPP
