#ifndef SLM_CLI_HPP
#define SLM_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace slm::cli {

/// Exit codes of the command-line front end.
inline constexpr int kOk = 0;
inline constexpr int kValidation = 2;
inline constexpr int kNumeric = 3;

/// Runs one job. `args` excludes the program name. JSON (or SVG) goes to
/// `out` unless --output is given; errors go to `err` as JSON.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slm::cli

#endif  // SLM_CLI_HPP
