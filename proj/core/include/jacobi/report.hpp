#ifndef JACOBI_REPORT_HPP
#define JACOBI_REPORT_HPP

#include <string>
#include <vector>

namespace jacobi {

enum class Verdict { Pass, NumericPass, Discrepancy, Fail };

const char* verdict_name(Verdict v);

struct Check {
  std::string name;
  Verdict verdict;
  std::string detail;
};

/// Ordered list of named checks plus free-form notes. A run fails only on
/// Verdict::Fail; numeric-pass and discrepancy entries keep exit status 0.
struct Report {
  std::string command;
  std::vector<Check> checks;
  std::vector<std::string> notes;

  void add(std::string name, Verdict v, std::string detail = "");
  void note(std::string text) { notes.push_back(std::move(text)); }
  int count(Verdict v) const;
  bool ok() const { return count(Verdict::Fail) == 0; }
  void merge(const Report& other);
};

std::string render_text(const Report& r);
std::string render_json(const Report& r);

}  // namespace jacobi

#endif
