#include "lms/report.hpp"

#include <sstream>

namespace lms::report {

std::string status_str(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Sampled:
      return "sampled";
  }
  return "?";
}

Status status_of(const std::string& s) {
  if (s == "pass") return Status::Pass;
  if (s == "fail") return Status::Fail;
  if (s == "sampled") return Status::Sampled;
  throw ParseError("unknown status: " + s);
}

bool Report::all_pass() const {
  for (const auto& [name, cl] : suites)
    if (!cl.all_pass()) return false;
  return true;
}

long long Report::failed_count() const {
  long long n = 0;
  for (const auto& [name, cl] : suites)
    for (const auto& c : cl.items)
      if (c.status == Status::Fail) ++n;
  return n;
}

long long Report::check_count() const {
  long long n = 0;
  for (const auto& [name, cl] : suites) n += static_cast<long long>(cl.items.size());
  return n;
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = schema;
  j["tool"] = tool;
  j["descriptor"] = descriptor;
  j["structure"] = structure;
  j["seed"] = seed;
  j["cap"] = cap;
  nlohmann::ordered_json js = nlohmann::ordered_json::array();
  for (const auto& [name, cl] : suites) {
    nlohmann::ordered_json suite;
    suite["name"] = name;
    if (!cl.orders.empty()) {
      nlohmann::ordered_json orders;
      for (const auto& [k, v] : cl.orders) orders[k] = v;
      suite["orders"] = orders;
    }
    if (!cl.notes.empty()) {
      nlohmann::ordered_json notes;
      for (const auto& [k, v] : cl.notes) notes[k] = v;
      suite["notes"] = notes;
    }
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : cl.items) {
      nlohmann::ordered_json cj;
      cj["name"] = c.name;
      cj["statement"] = c.statement;
      cj["status"] = status_str(c.status);
      if (!c.witness.empty()) cj["witness"] = c.witness;
      checks.push_back(cj);
    }
    suite["checks"] = checks;
    js.push_back(suite);
  }
  j["suites"] = js;
  return j;
}

Report Report::from_json(const nlohmann::ordered_json& j) {
  Report r;
  r.schema = j.at("schema").get<int>();
  r.tool = j.at("tool").get<std::string>();
  r.descriptor = j.at("descriptor").get<std::string>();
  r.structure = j.at("structure").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.cap = j.at("cap").get<long long>();
  for (const auto& suite : j.at("suites")) {
    CheckList cl;
    if (suite.contains("orders"))
      for (auto it = suite["orders"].begin(); it != suite["orders"].end(); ++it)
        cl.orders[it.key()] = it.value().get<long long>();
    if (suite.contains("notes"))
      for (auto it = suite["notes"].begin(); it != suite["notes"].end(); ++it)
        cl.notes[it.key()] = it.value().get<std::string>();
    for (const auto& cj : suite.at("checks")) {
      Check c;
      c.name = cj.at("name").get<std::string>();
      c.statement = cj.at("statement").get<std::string>();
      c.status = status_of(cj.at("status").get<std::string>());
      if (cj.contains("witness")) c.witness = cj.at("witness").get<std::string>();
      cl.items.push_back(c);
    }
    r.suites.emplace_back(suite.at("name").get<std::string>(), std::move(cl));
  }
  return r;
}

std::string Report::summary() const {
  std::ostringstream os;
  os << structure << "  (" << descriptor << ")\n";
  for (const auto& [name, cl] : suites) {
    os << "suite " << name << "\n";
    for (const auto& c : cl.items) {
      os << "  " << status_str(c.status);
      for (size_t i = status_str(c.status).size(); i < 8; ++i) os << ' ';
      os << c.name << ": " << c.statement;
      if (!c.witness.empty()) os << "  [" << c.witness << "]";
      os << "\n";
    }
    if (!cl.orders.empty()) {
      os << "  orders:";
      for (const auto& [k, v] : cl.orders) os << " " << k << "=" << v;
      os << "\n";
    }
    for (const auto& [k, v] : cl.notes) os << "  note: " << k << ": " << v << "\n";
  }
  return os.str();
}

}  // namespace lms::report
