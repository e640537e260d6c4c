#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace tqa {

struct CheckResult {
  std::string name;
  int degree = 0;
  bool pass = true;
  std::size_t checked = 0;
  std::string witness;  // first counterexample, empty on success
};

struct Report {
  std::vector<CheckResult> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  void append(const Report& o) { checks.insert(checks.end(), o.checks.begin(), o.checks.end()); }
};

}  // namespace tqa
