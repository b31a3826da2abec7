#include "jreal/report.hpp"

#include <algorithm>

namespace jreal::cli {

namespace {

std::string clean(std::string s) {
  std::replace_if(s.begin(), s.end(), [](char c) { return c == '\t' || c == '\n' || c == '\r'; }, ' ');
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Pass:
      return "pass";
    case Outcome::Fail:
      return "fail";
    case Outcome::Unknown:
      return "unknown";
  }
  return "?";
}

}  // namespace

void Report::add(std::string id, std::string verdict, Outcome outcome, std::string detail) {
  cases.push_back({std::move(id), std::move(verdict), outcome, std::move(detail)});
}

int Report::count(Outcome o) const {
  return static_cast<int>(std::count_if(cases.begin(), cases.end(), [o](const Case& c) { return c.outcome == o; }));
}

int Report::exit_code() const {
  if (count(Outcome::Fail) > 0) return 1;
  if (count(Outcome::Unknown) > count(Outcome::Pass)) return 2;
  return 0;
}

std::string emit_report(const Report& r, Format f) {
  std::string out;
  auto line = [&out](const std::string& s) { out += clean(s) + "\n"; };
  const std::string summary = "pass=" + std::to_string(r.count(Outcome::Pass)) +
                              " fail=" + std::to_string(r.count(Outcome::Fail)) +
                              " unknown=" + std::to_string(r.count(Outcome::Unknown));
  if (f == Format::Text) {
    line("jreal " + r.command);
    line("policy " + r.policy);
    for (const auto& n : r.notes) line(n);
    for (const auto& c : r.cases) line("case " + clean(c.id) + " " + clean(c.verdict) + " " + clean(c.detail));
    for (const auto& c : r.caveats) line("APPROX " + c);
    line("summary " + summary);
    return out;
  }
  line("# jreal " + r.command);
  line("# policy " + r.policy);
  for (const auto& n : r.notes) line("# " + n);
  for (const auto& c : r.caveats) line("# APPROX " + c);
  line("# summary " + summary);
  out += "id\tverdict\toutcome\tdetail\n";
  for (const auto& c : r.cases) {
    std::string d = clean(c.detail);
    out += clean(c.id) + "\t" + clean(c.verdict) + "\t" + outcome_name(c.outcome) + "\t" + (d.empty() ? "-" : d) + "\n";
  }
  return out;
}

}  // namespace jreal::cli
