#pragma once

#include <optional>
#include <set>

#include "ocs/card.hpp"
#include "ocs/permutation.hpp"

namespace ocs {

/// A location resolved against a concrete stack. An empty index means the
/// whole packet.
struct ResolvedLocation {
  std::optional<std::size_t> index;

  bool is_whole_packet() const noexcept { return !index.has_value(); }
  friend bool operator==(const ResolvedLocation&, const ResolvedLocation&) = default;
};

/// Throws EmptyStack, OutOfRange.
ResolvedLocation resolve_location(const StackState& state, const Location& loc);

/// Reverses the order and flips every card. Requires a squared packet.
StackState turnover_packet(const StackState& state);

/// Flips a single card. Spread and fanned packets allow any position; a
/// squared packet only allows the top card.
StackState turn_over_card(const StackState& state, const Location& loc);

StackState set_form(const StackState& state, PacketForm form);

/// output[i] = input[perm(i)]. Throws SizeMismatch.
StackState apply_permutation(const StackState& state, const Permutation& perm);

/// Flips the cards at the given 1-based positions. Throws OutOfRange.
StackState flip_positions(const StackState& state, const std::set<std::size_t>& positions);

enum class QualityMutation { Add, Remove };

/// Throws DuplicateQuality, QualityNotPresent, OutOfRange.
StackState mutate_quality(const StackState& state, const Location& loc, const Quality& q,
                          QualityMutation mode);

/// Position of the topmost card carrying a quality of `kind`. Throws NotFound.
Location locate_by_quality(const StackState& state, QualityKind kind);

/// Moves the top `count` cards to the bottom, preserving their order.
/// 0 < count < size is required (OutOfRange otherwise).
StackState cut(const StackState& state, std::size_t count);

}  // namespace ocs
