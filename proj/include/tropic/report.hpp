#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tropic {

struct CheckResult {
  std::string name;
  bool pass = false;
  long millis = 0;
  std::string detail;  // counts and witnesses, or the failure explanation
};

struct VerificationReport {
  std::string problem;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool all_pass() const;
};

// Canonical machine form: sorted keys, no wall times, so identical inputs and
// seeds produce identical bytes.
std::string report_json(const VerificationReport& r);
// Human form, one line per check, with wall times.
std::string report_summary(const VerificationReport& r);

}  // namespace tropic
