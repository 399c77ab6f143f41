#pragma once

// Acceptance suites. Each criterion is a named suite that runs a fixed set
// of closed-form, oracle and invariant checks and reports one pass/fail
// line. Shared by the `verify` command and the acceptance test binary.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tailpath {

struct CriterionResult {
  int id = 0;
  std::string suite;
  std::string title;
  bool passed = false;
  int checks = 0;
  // Key numbers on success, the first few failures otherwise.
  std::vector<std::string> notes;
  double seconds = 0.0;
  double time_limit = 0.0;  // seconds; 0 means no limit
};

// Suite names in criterion order: smo, ag, t, limits, singular, spectral,
// m, fgm, numeric, properties.
const std::vector<std::string>& acceptance_suites();

std::optional<int> criterion_for_suite(std::string_view suite);

// Runs criterion `id` (1-based). Exceptions thrown by the numerics are caught
// and reported as failures.
CriterionResult run_criterion(int id);

// "PASS  1 smo      SMO MTCM closed form  [12 checks, 0.01 s]" plus notes.
std::string format_result(const CriterionResult& result);

}  // namespace tailpath
