#include "ocs/violation.hpp"

#include <algorithm>
#include <tuple>

namespace ocs {

std::string_view to_string(RuleId rule) {
  switch (rule) {
    case RuleId::SingleHead: return "SINGLE-HEAD";
    case RuleId::TerminalEmpty: return "TERMINAL-EMPTY";
    case RuleId::AcyclicPrecedes: return "ACYCLIC-PRECEDES";
    case RuleId::OnlyRange: return "ONLY-RANGE";
    case RuleId::SomeExists: return "SOME-EXISTS";
    case RuleId::ExactlyN: return "EXACTLY-N";
    case RuleId::InverseFunctional: return "INVERSE-FUNCTIONAL";
    case RuleId::DepthBound: return "DEPTH-BOUND";
    case RuleId::AvailableCards: return "AVAILABLE-CARDS";
    case RuleId::CoherenceEmptyClass: return "COHERENCE-EMPTY-CLASS";
    case RuleId::NameSubstring: return "NAME-SUBSTRING";
  }
  return "?";
}

std::optional<RuleId> parse_rule_id(std::string_view s) {
  for (auto r : kAllRules) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

bool violation_less(const Violation& a, const Violation& b) {
  return std::tie(a.rule, a.subject, a.detail, a.severity) < std::tie(b.rule, b.subject, b.detail, b.severity);
}

void sort_violations(std::vector<Violation>& v) { std::sort(v.begin(), v.end(), violation_less); }

std::string format_violation(const Violation& v) {
  std::string out = v.severity == Severity::Error ? "ERROR " : "WARN ";
  out += to_string(v.rule);
  out += ' ';
  out += v.subject;
  out += ": ";
  out += v.detail;
  return out;
}

}  // namespace ocs
