#include "jacobi/report.hpp"

#include <sstream>

#include "json.hpp"

namespace jacobi {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::NumericPass: return "numeric-pass";
    case Verdict::Discrepancy: return "discrepancy";
    case Verdict::Fail: return "fail";
  }
  return "?";
}

void Report::add(std::string name, Verdict v, std::string detail) {
  checks.push_back({std::move(name), v, std::move(detail)});
}

int Report::count(Verdict v) const {
  int n = 0;
  for (const Check& c : checks)
    if (c.verdict == v) ++n;
  return n;
}

void Report::merge(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

std::string render_text(const Report& r) {
  std::ostringstream os;
  if (!r.command.empty()) os << "# " << r.command << "\n";
  for (const Check& c : r.checks) {
    os << "[" << verdict_name(c.verdict) << "] " << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
  }
  for (const std::string& n : r.notes) os << "note: " << n << "\n";
  os << "summary: " << r.count(Verdict::Pass) << " pass, " << r.count(Verdict::NumericPass)
     << " numeric-pass, " << r.count(Verdict::Discrepancy) << " discrepancy, "
     << r.count(Verdict::Fail) << " fail\n";
  return os.str();
}

std::string render_json(const Report& r) {
  nlohmann::json j;
  j["command"] = r.command;
  j["checks"] = nlohmann::json::array();
  for (const Check& c : r.checks) {
    nlohmann::json jc;
    jc["name"] = c.name;
    jc["verdict"] = verdict_name(c.verdict);
    if (!c.detail.empty()) jc["detail"] = c.detail;
    j["checks"].push_back(jc);
  }
  j["notes"] = r.notes;
  j["summary"] = {{"pass", r.count(Verdict::Pass)},
                  {"numeric_pass", r.count(Verdict::NumericPass)},
                  {"discrepancy", r.count(Verdict::Discrepancy)},
                  {"fail", r.count(Verdict::Fail)}};
  return j.dump(2) + "\n";
}

}  // namespace jacobi
