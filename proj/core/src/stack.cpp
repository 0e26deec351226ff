#include "ocs/stack.hpp"

#include <algorithm>

#include "ocs/error.hpp"

namespace ocs {
namespace {

std::size_t single_index(const StackState& state, const Location& loc) {
  auto r = resolve_location(state, loc);
  if (r.is_whole_packet()) {
    throw Error(ErrorCode::OutOfRange, "this operation needs a single card, not the whole packet");
  }
  return *r.index;
}

}  // namespace

ResolvedLocation resolve_location(const StackState& state, const Location& loc) {
  if (state.empty()) throw Error(ErrorCode::EmptyStack, "stack has no cards");
  switch (loc.kind) {
    case Location::Kind::Top: return {1};
    case Location::Kind::Bottom: return {state.size()};
    case Location::Kind::WholePacket: return {std::nullopt};
    case Location::Kind::Position:
      if (loc.n < 1 || loc.n > state.size()) {
        throw Error(ErrorCode::OutOfRange, "position " + std::to_string(loc.n) + " in stack of " +
                                               std::to_string(state.size()));
      }
      return {loc.n};
  }
  return {std::nullopt};
}

StackState turnover_packet(const StackState& state) {
  if (state.form() != PacketForm::Squared) {
    throw Error(ErrorCode::FormMismatch, "turning the packet over needs it squared, it is " +
                                             std::string(to_string(state.form())));
  }
  auto entries = state.entries();
  std::reverse(entries.begin(), entries.end());
  for (auto& e : entries) e.orientation = flip(e.orientation);
  return state.with_entries(std::move(entries));
}

StackState turn_over_card(const StackState& state, const Location& loc) {
  auto index = single_index(state, loc);
  // TODO: confirm against practice whether a fan really allows mid-packet turnovers.
  if (state.form() == PacketForm::Squared && index != 1) {
    throw Error(ErrorCode::FormMismatch, "only the top card of a squared packet can be turned over, not position " +
                                             std::to_string(index));
  }
  auto entries = state.entries();
  entries[index - 1].orientation = flip(entries[index - 1].orientation);
  return state.with_entries(std::move(entries));
}

StackState set_form(const StackState& state, PacketForm form) { return state.with_form(form); }

StackState apply_permutation(const StackState& state, const Permutation& perm) {
  if (perm.size() != state.size()) {
    throw Error(ErrorCode::SizeMismatch, "permutation of " + std::to_string(perm.size()) +
                                             " applied to stack of " + std::to_string(state.size()));
  }
  std::vector<CardEntry> out;
  out.reserve(state.size());
  for (std::size_t i = 1; i <= perm.size(); ++i) out.push_back(state.entries()[perm(i) - 1]);
  return state.with_entries(std::move(out));
}

StackState flip_positions(const StackState& state, const std::set<std::size_t>& positions) {
  auto entries = state.entries();
  for (auto p : positions) {
    if (p < 1 || p > entries.size()) {
      throw Error(ErrorCode::OutOfRange, "flip position " + std::to_string(p) + " in stack of " +
                                             std::to_string(entries.size()));
    }
    entries[p - 1].orientation = flip(entries[p - 1].orientation);
  }
  return state.with_entries(std::move(entries));
}

StackState mutate_quality(const StackState& state, const Location& loc, const Quality& q,
                          QualityMutation mode) {
  auto index = single_index(state, loc);
  auto entries = state.entries();
  auto& qualities = entries[index - 1].qualities;
  if (mode == QualityMutation::Add) {
    if (!qualities.insert(q).second) {
      throw Error(ErrorCode::DuplicateQuality, entries[index - 1].card.code() + " already has a crimp at " +
                                                   std::string(to_string(q.site)));
    }
  } else if (qualities.erase(q) == 0) {
    throw Error(ErrorCode::QualityNotPresent, entries[index - 1].card.code() + " has no crimp at " +
                                                  std::string(to_string(q.site)));
  }
  return state.with_entries(std::move(entries));
}

Location locate_by_quality(const StackState& state, QualityKind kind) {
  const auto& entries = state.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (const auto& q : entries[i].qualities) {
      if (q.kind == kind) return Location::position(i + 1);
    }
  }
  throw Error(ErrorCode::NotFound, "no card carries a crimp");
}

StackState cut(const StackState& state, std::size_t count) {
  if (count == 0 || count >= state.size()) {
    throw Error(ErrorCode::OutOfRange, "cannot cut " + std::to_string(count) + " cards from a stack of " +
                                           std::to_string(state.size()));
  }
  auto entries = state.entries();
  std::rotate(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(count), entries.end());
  return state.with_entries(std::move(entries));
}

}  // namespace ocs
