#ifndef LMS_REPORT_HPP
#define LMS_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lms/errors.hpp"
#include "lms/verdict.hpp"

namespace lms::report {

// Deterministic verification report. The JSON form is byte-identical for
// identical invocations: suite registry order is fixed and no wall-clock
// data is serialized (timings appear only in the stdout summary).
struct Report {
  int schema = 1;
  std::string tool = "lms 1.0.0";
  std::string descriptor;
  std::string structure;
  std::uint64_t seed = 0;
  long long cap = 50000;
  std::vector<std::pair<std::string, CheckList>> suites;

  void add_suite(const std::string& name, CheckList checks) {
    suites.emplace_back(name, std::move(checks));
  }
  bool all_pass() const;
  long long failed_count() const;
  long long check_count() const;

  nlohmann::ordered_json to_json() const;
  static Report from_json(const nlohmann::ordered_json& j);
  std::string summary() const;  // human-readable table
};

std::string status_str(Status s);
Status status_of(const std::string& s);

}  // namespace lms::report

#endif
