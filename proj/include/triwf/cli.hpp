#ifndef TRIWF_CLI_HPP
#define TRIWF_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace triwf::cli {

/// Runs one tool invocation. Exit status: 0 = success / expectation met,
/// 1 = checked property does not hold (criterion fails, scan expectation
/// missed, no witness), 2 = usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace triwf::cli

#endif  // TRIWF_CLI_HPP
