#pragma once
#include <string>
#include <vector>

namespace hymem {

struct Violation {
  double t = 0.0;
  long j = 0;
  std::string cond;  // condition id, e.g. "D.1" or "small-gain"
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // lhs - rhs; positive beyond tolerance means violated
};

/// Per-check verdict with violation locations and numeric margins.
/// passed <=> violations empty; a trigger-gated check that never fired is
/// additionally flagged vacuous.
struct CheckReport {
  std::string variant;
  long samples_checked = 0;
  long trigger_hits = -1;  // -1 for checks without a trigger
  bool vacuous = false;
  std::vector<Violation> violations;
  double atol = 1e-6;
  double rtol = 1e-6;

  bool passed() const { return violations.empty(); }

  void record(double t, long j, const std::string& cond, double lhs, double rhs) {
    violations.push_back({t, j, cond, lhs, rhs, lhs - rhs});
  }

  /// lhs <= rhs within atol + rtol * |rhs|.
  bool within(double lhs, double rhs) const { return lhs - rhs <= atol + rtol * std::abs(rhs); }
};

}  // namespace hymem
