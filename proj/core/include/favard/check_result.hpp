#pragma once

#include <string>
#include <vector>

namespace favard {

// Outcome of one named structural verification.
struct CheckResult {
  std::string name;
  bool applicable = true;  // e.g. product-only checks on non-product measures
  bool passed = false;
  std::string max_deviation = "0";
  std::vector<std::string> notes;

  bool ok() const { return !applicable || passed; }
};

}  // namespace favard
