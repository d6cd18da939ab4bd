#pragma once

#include <string>
#include <vector>

namespace splab::app {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  bool quick = false;
  // Deliberate defect for exercising the suite itself; "" or "lambda_truncated"
  // (Taylor coefficients summed over r - 2 terms instead of r).
  std::string inject_fault;
};

std::vector<CheckResult> run_verify_suite(const VerifyOptions& options);

}  // namespace splab::app
