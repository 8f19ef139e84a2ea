#ifndef LMS_VERDICT_HPP
#define LMS_VERDICT_HPP

#include <map>
#include <string>
#include <vector>

namespace lms {

enum class Status { Pass, Fail, Sampled };

// One verification record: an identity or axiom together with the outcome.
// `statement` holds the mathematical fact being checked, so reports are
// self-documenting; failures always carry a witness.
struct Check {
  std::string name;
  std::string statement;
  Status status = Status::Pass;
  std::string witness;
};

struct CheckList {
  std::vector<Check> items;
  std::map<std::string, long long> orders;
  std::map<std::string, std::string> notes;

  void pass(const std::string& name, const std::string& statement) {
    items.push_back({name, statement, Status::Pass, ""});
  }
  void fail(const std::string& name, const std::string& statement, const std::string& witness) {
    items.push_back({name, statement, Status::Fail, witness});
  }
  void sampled(const std::string& name, const std::string& statement, const std::string& note) {
    items.push_back({name, statement, Status::Sampled, note});
  }
  void set(const std::string& name, const std::string& statement, bool ok, const std::string& witness) {
    if (ok)
      pass(name, statement);
    else
      fail(name, statement, witness);
  }
  bool all_pass() const {
    for (const auto& c : items)
      if (c.status == Status::Fail) return false;
    return true;
  }
  const Check* find(const std::string& name) const {
    for (const auto& c : items)
      if (c.name == name) return &c;
    return nullptr;
  }
  void merge(const CheckList& other) {
    items.insert(items.end(), other.items.begin(), other.items.end());
    for (const auto& [k, v] : other.orders) orders[k] = v;
    for (const auto& [k, v] : other.notes) notes[k] = v;
  }
};

}  // namespace lms

#endif
