#include "tropic/report.hpp"

#include <sstream>

#include <json.hpp>

namespace tropic {

bool VerificationReport::all_pass() const {
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string report_json(const VerificationReport& r) {
  nlohmann::json j;
  j["schema"] = "tropic-report-v1";
  j["problem"] = r.problem;
  j["seed"] = r.seed;
  j["pass"] = r.all_pass();
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& c : r.checks) {
    nlohmann::json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    e["detail"] = c.detail;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  return j.dump(2) + "\n";
}

std::string report_summary(const VerificationReport& r) {
  std::ostringstream out;
  out << r.problem << " (seed " << r.seed << ")\n";
  for (const CheckResult& c : r.checks) {
    out << (c.pass ? "  pass  " : "  FAIL  ") << c.name << " [" << c.millis << " ms]";
    if (!c.detail.empty()) out << " " << c.detail;
    out << "\n";
  }
  out << (r.all_pass() ? "all checks passed" : "CHECKS FAILED") << "\n";
  return out.str();
}

}  // namespace tropic
