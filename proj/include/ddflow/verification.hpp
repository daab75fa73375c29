#pragma once

#include <string>
#include <vector>

namespace ddflow::verification {

struct CheckResult {
  std::string id;
  std::string name;
  bool passed = false;
  std::string measured;
  std::string expected;
  double seconds = 0.0;
  double budget_seconds = 0.0;  // 0 = no runtime budget
};

struct VerifyOptions {
  // Test hook: scales one entry of every F-block before the cascade is
  // composed, so the transfer-equivalence check must fail.
  bool perturb_f_block = false;
};

// The ten acceptance criteria, in order (ids "1".."10").
std::vector<CheckResult> acceptance_checks(const VerifyOptions& options = {});

// Module invariants (ids "P1".."Pn").
std::vector<CheckResult> property_checks();

// Both batteries, acceptance first.
std::vector<CheckResult> full_battery(const VerifyOptions& options = {});

}  // namespace ddflow::verification
