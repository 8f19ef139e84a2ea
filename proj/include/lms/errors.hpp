#ifndef LMS_ERRORS_HPP
#define LMS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lms {

// Malformed descriptor / structure string. CLI maps this to exit code 2.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// An enumeration grew past its configured cap. CLI maps this to exit code 3.
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// A stated precondition does not hold for the given input.
struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace lms

#endif
