#ifndef LMS_CLI_HPP
#define LMS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace lms::cli {

// Runs one CLI invocation. Exit codes: 0 all checks pass, 1 a check failed,
// 2 descriptor/usage error, 3 an enumeration cap was exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lms::cli

#endif
