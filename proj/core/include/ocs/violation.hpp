#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ocs {

enum class RuleId {
  SingleHead,
  TerminalEmpty,
  AcyclicPrecedes,
  OnlyRange,
  SomeExists,
  ExactlyN,
  InverseFunctional,
  DepthBound,
  AvailableCards,
  CoherenceEmptyClass,
  NameSubstring,
};

inline constexpr RuleId kAllRules[] = {
    RuleId::SingleHead,       RuleId::TerminalEmpty,     RuleId::AcyclicPrecedes,
    RuleId::OnlyRange,        RuleId::SomeExists,        RuleId::ExactlyN,
    RuleId::InverseFunctional, RuleId::DepthBound,       RuleId::AvailableCards,
    RuleId::CoherenceEmptyClass, RuleId::NameSubstring};

/// "SINGLE-HEAD", "DEPTH-BOUND", ...
std::string_view to_string(RuleId rule);
std::optional<RuleId> parse_rule_id(std::string_view s);

enum class Severity { Error, Warning };

struct Violation {
  RuleId rule;
  std::string subject;
  Severity severity = Severity::Error;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Rule, then subject, then detail.
bool violation_less(const Violation& a, const Violation& b);
void sort_violations(std::vector<Violation>& v);

/// "ERROR DEPTH-BOUND side_steal: ..." / "WARN COHERENCE-EMPTY-CLASS ..."
std::string format_violation(const Violation& v);

}  // namespace ocs
