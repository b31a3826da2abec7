#pragma once

#include <set>
#include <string>
#include <vector>

namespace jreal::cli {

enum class Outcome { Pass, Fail, Unknown };

struct Case {
  std::string id;
  std::string verdict;
  Outcome outcome = Outcome::Unknown;
  std::string detail;
};

/// Output of one command: per-case lines, the policy it ran under and the
/// approximations it relied on.
struct Report {
  std::string command;
  std::string policy;
  std::vector<Case> cases;
  std::vector<std::string> notes;  // free-form lines printed before the cases
  std::set<std::string> caveats;

  void add(std::string id, std::string verdict, Outcome outcome, std::string detail = "");
  int count(Outcome o) const;
  /// 1 if any case failed, else 2 if unknowns outnumber passes, else 0.
  int exit_code() const;
};

enum class Format { Text, Tsv };

/// Byte-stable rendering. Text: header, policy, notes, `case <id> <verdict>
/// <detail>` lines, one `APPROX` line per caveat and a summary. Tsv: `#`
/// lines for header, policy and caveats, then a column header and one row
/// per case (an empty detail is written `-`). Tabs and newlines inside fields
/// become spaces.
std::string emit_report(const Report& r, Format f);

}  // namespace jreal::cli
