#ifndef BANNAI_REPORT_HPP
#define BANNAI_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace bannai {

struct CheckResult {
  std::string relation;
  int degree = -1;       // degree or index the check ran at, -1 if not applicable
  bool passed = false;
  std::string residual;  // lhs-minus-rhs (or other detail) when failed
};

class VerificationReport {
 public:
  void add(std::string relation, int degree, bool passed, std::string residual = "") {
    checks_.push_back({std::move(relation), degree, passed, std::move(residual)});
  }
  void merge(const VerificationReport& other) {
    checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
  }

  bool all_passed() const {
    for (const auto& c : checks_)
      if (!c.passed) return false;
    return true;
  }
  const std::vector<CheckResult>& checks() const { return checks_; }

  std::vector<std::string> failed_relations() const {
    std::vector<std::string> out;
    for (const auto& c : checks_)
      if (!c.passed) out.push_back(c.relation);
    return out;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : checks_) {
      nlohmann::ordered_json e;
      e["relation"] = c.relation;
      e["degree"] = c.degree;
      e["status"] = c.passed ? "pass" : "fail";
      if (!c.passed) e["lhs_minus_rhs"] = c.residual;
      arr.push_back(std::move(e));
    }
    return arr;
  }

 private:
  std::vector<CheckResult> checks_;
};

}  // namespace bannai

#endif  // BANNAI_REPORT_HPP
