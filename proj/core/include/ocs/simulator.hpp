#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ocs/card.hpp"
#include "ocs/error.hpp"
#include "ocs/method.hpp"
#include "ocs/taxonomy.hpp"

namespace ocs {

/// states[0] is the initial state, states[k] the state after step k.
struct Trace {
  std::vector<StackState> states;

  const StackState& final_state() const { return states.back(); }
  std::size_t steps() const noexcept { return states.empty() ? 0 : states.size() - 1; }

  friend bool operator==(const Trace&, const Trace&) = default;
};

enum class StepErrorKind { FormMismatch, OutOfRange, ParticipantMismatch, UnknownAction, QualityError };

std::string_view to_string(StepErrorKind kind);

struct StepError {
  std::size_t step_index = 0;  // 1-based
  StepErrorKind kind = StepErrorKind::UnknownAction;
  std::string detail;

  friend bool operator==(const StepError&, const StepError&) = default;
};

/// Thrown by step(); the step index is not known at that level.
class StepFailure : public Error {
 public:
  StepFailure(ErrorCode code, StepErrorKind kind, const std::string& message) : Error(code, message), kind_(kind) {}
  StepErrorKind kind() const noexcept { return kind_; }

 private:
  StepErrorKind kind_;
};

struct RunResult {
  Trace trace;  // partial when error is set: the states before the failing step
  std::optional<StepError> error;

  bool ok() const noexcept { return !error; }
};

/// Squared, top card first. The kind defaults to Packet for 2..15 cards and
/// Deck otherwise; forcing an impossible kind throws InvariantViolation.
/// Throws EmptyStartState.
StackState init_state(const std::vector<StartEntry>& start, std::optional<AggregateKind> kind = std::nullopt);
StackState init_state(const MethodDoc& doc, std::optional<AggregateKind> kind = std::nullopt);

/// Executes one instruction. Throws StepFailure.
StackState step(const Taxonomy& t, const StackState& s, const Instruction& ins);

/// Runs at most `limit` instructions (all when unset), stopping at the first
/// failing one.
RunResult run(const Taxonomy& t, const StackState& initial, const std::vector<Instruction>& steps,
              std::optional<std::size_t> limit = std::nullopt);
RunResult run(const Taxonomy& t, const MethodDoc& doc, std::optional<std::size_t> limit = std::nullopt);

struct CardMismatch {
  CardName card;
  Orientation expected;
  Orientation actual;

  friend bool operator==(const CardMismatch&, const CardMismatch&) = default;
};

struct EffectReport {
  bool holds = true;
  std::vector<CardMismatch> mismatches;  // in card order
};

/// Compares final orientations. Throws UnknownCardInAssertion when an
/// asserted card is not in the final state.
EffectReport check_effect(const Trace& tr, const EffectAssertion& e);

/// "k: ASup AHdown ... [squared]", one line per state.
std::string format_state(const StackState& s);
std::string dump_trace(const Trace& tr);

}  // namespace ocs
