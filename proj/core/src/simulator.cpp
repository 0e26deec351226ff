#include "ocs/simulator.hpp"

#include "ocs/stack.hpp"

namespace ocs {

std::string_view to_string(StepErrorKind kind) {
  switch (kind) {
    case StepErrorKind::FormMismatch: return "FormMismatch";
    case StepErrorKind::OutOfRange: return "OutOfRange";
    case StepErrorKind::ParticipantMismatch: return "ParticipantMismatch";
    case StepErrorKind::UnknownAction: return "UnknownAction";
    case StepErrorKind::QualityError: return "QualityError";
  }
  return "UnknownAction";
}

StackState init_state(const std::vector<StartEntry>& start, std::optional<AggregateKind> kind) {
  if (start.empty()) throw Error(ErrorCode::EmptyStartState, "the starting state lists no cards");
  std::vector<CardEntry> entries;
  entries.reserve(start.size());
  for (const auto& e : start) entries.push_back({e.card, e.orientation, {}});
  if (kind) return StackState(std::move(entries), PacketForm::Squared, *kind);
  return StackState::with_natural_kind(std::move(entries), PacketForm::Squared);
}

StackState init_state(const MethodDoc& doc, std::optional<AggregateKind> kind) {
  return init_state(doc.start_entries(), kind);
}

namespace {

StepErrorKind kind_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::FormMismatch: return StepErrorKind::FormMismatch;
    case ErrorCode::OutOfRange:
    case ErrorCode::EmptyStack:
    case ErrorCode::InvariantViolation: return StepErrorKind::OutOfRange;
    case ErrorCode::SizeMismatch:
    case ErrorCode::ParticipantMismatch: return StepErrorKind::ParticipantMismatch;
    case ErrorCode::DuplicateQuality:
    case ErrorCode::QualityNotPresent:
    case ErrorCode::NotFound: return StepErrorKind::QualityError;
    default: return StepErrorKind::UnknownAction;
  }
}

StackState apply_variant(const SleightVariant& v, const StackState& s) {
  if (s.size() != v.participants) {
    throw StepFailure(ErrorCode::ParticipantMismatch, StepErrorKind::ParticipantMismatch,
                      v.display_name() + " takes exactly " + std::to_string(v.participants) + " cards, the stack has " +
                          std::to_string(s.size()));
  }
  if (s.form() != PacketForm::Squared) {
    throw StepFailure(ErrorCode::FormMismatch, StepErrorKind::FormMismatch,
                      v.display_name() + " needs a squared packet, it is " + std::string(to_string(s.form())));
  }
  return flip_positions(apply_permutation(s, v.transform.perm), v.transform.flips);
}

std::size_t cut_count(const StackState& s, const Location& focus) {
  switch (focus.kind) {
    case Location::Kind::Top: return 1;
    case Location::Kind::Bottom: return s.size() - 1;
    case Location::Kind::Position: return focus.n;
    case Location::Kind::WholePacket: return s.size() / 2;
  }
  return 1;
}

StackState apply_straight(const StraightBinding& b, const StackState& s, const Location& focus) {
  const Quality crimp{QualityKind::Crimp, b.site};
  switch (b.op) {
    case StraightOp::Spread: return set_form(s, PacketForm::Spread);
    case StraightOp::Square: return set_form(s, PacketForm::Squared);
    case StraightOp::Fan: return set_form(s, PacketForm::Fan);
    case StraightOp::FlipCard: return turn_over_card(s, focus);
    case StraightOp::FlipPacket: return turnover_packet(s);
    case StraightOp::CrimpAdd: return mutate_quality(s, focus, crimp, QualityMutation::Add);
    case StraightOp::CrimpRemove: return mutate_quality(s, focus, crimp, QualityMutation::Remove);
    case StraightOp::CutToQuality: {
      auto at = locate_by_quality(s, QualityKind::Crimp);
      return at.n == 1 ? s : cut(s, at.n - 1);
    }
    case StraightOp::Cut: return cut(s, cut_count(s, focus));
    case StraightOp::Identity: return s;
  }
  return s;
}

StackState dispatch(const Taxonomy& t, const StackState& s, const Instruction& ins) {
  const auto& ref = ins.action;
  if (ref.kind == ActionRef::Kind::Variant) {
    const auto* v = t.find_variant(ref.id);
    if (!v) throw StepFailure(ErrorCode::UnknownAction, StepErrorKind::UnknownAction, "no variant " + ref.id);
    return apply_variant(*v, s);
  }
  const auto* c = t.find_class(ref.id);
  if (!c) throw StepFailure(ErrorCode::UnknownAction, StepErrorKind::UnknownAction, "no class " + ref.id);
  if (c->binding) return apply_straight(*c->binding, s, ins.focus);
  auto vs = t.variants_of(c->id);
  if (vs.size() == 1) return apply_variant(*vs.front(), s);
  if (vs.size() > 1) {
    const SleightVariant* fit = nullptr;
    for (const auto* v : vs) {
      if (v->participants == s.size()) {
        if (fit) {
          fit = nullptr;
          break;
        }
        fit = v;
      }
    }
    if (fit) return apply_variant(*fit, s);
    throw StepFailure(ErrorCode::UnknownAction, StepErrorKind::UnknownAction,
                      c->id + " has several variants; name one of them");
  }
  throw StepFailure(ErrorCode::UnknownAction, StepErrorKind::UnknownAction, c->id + " has no executable semantics");
}

}  // namespace

StackState step(const Taxonomy& t, const StackState& s, const Instruction& ins) {
  try {
    return dispatch(t, s, ins);
  } catch (const StepFailure&) {
    throw;
  } catch (const Error& e) {
    throw StepFailure(e.code(), kind_for(e.code()), e.what());
  }
}

RunResult run(const Taxonomy& t, const StackState& initial, const std::vector<Instruction>& steps,
              std::optional<std::size_t> limit) {
  RunResult r;
  r.trace.states.push_back(initial);
  const std::size_t n = limit ? std::min(*limit, steps.size()) : steps.size();
  for (std::size_t k = 0; k < n; ++k) {
    try {
      r.trace.states.push_back(step(t, r.trace.states.back(), steps[k]));
    } catch (const StepFailure& f) {
      r.error = StepError{k + 1, f.kind(), f.what()};
      break;
    }
  }
  return r;
}

RunResult run(const Taxonomy& t, const MethodDoc& doc, std::optional<std::size_t> limit) {
  return run(t, init_state(doc), doc.steps(), limit);
}

EffectReport check_effect(const Trace& tr, const EffectAssertion& e) {
  EffectReport report;
  if (tr.states.empty()) {
    if (e.expected.empty()) return report;
    throw Error(ErrorCode::UnknownCardInAssertion, "the trace is empty");
  }
  const auto& last = tr.final_state();
  for (const auto& [card, expected] : e.expected) {
    auto pos = last.position_of(card);
    if (!pos) throw Error(ErrorCode::UnknownCardInAssertion, card.code() + " is not in the stack");
    auto actual = last.at(*pos).orientation;
    if (actual != expected) report.mismatches.push_back({card, expected, actual});
  }
  report.holds = report.mismatches.empty();
  return report;
}

std::string format_state(const StackState& s) {
  std::string out;
  for (const auto& e : s.entries()) {
    out += e.card.code();
    out += to_string(e.orientation);
    out += ' ';
  }
  out += "[" + std::string(to_string(s.form())) + "]";
  return out;
}

std::string dump_trace(const Trace& tr) {
  std::string out;
  for (std::size_t k = 0; k < tr.states.size(); ++k) {
    out += std::to_string(k) + ": " + format_state(tr.states[k]) + "\n";
  }
  return out;
}

}  // namespace ocs
