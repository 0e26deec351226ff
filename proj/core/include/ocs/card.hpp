#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ocs {

enum class Rank : std::uint8_t { Ace = 1, Two, Three, Four, Five, Six, Seven, Eight, Nine, Ten, Jack, Queen, King };

// Declaration order is the canonical sort order for card sets.
enum class Suit : std::uint8_t { Clubs, Hearts, Spades, Diamonds };

enum class Color : std::uint8_t { Black, Red };

struct CardName {
  Rank rank = Rank::Ace;
  Suit suit = Suit::Clubs;

  friend constexpr bool operator==(const CardName&, const CardName&) = default;
  friend constexpr std::strong_ordering operator<=>(const CardName& a, const CardName& b) {
    if (auto c = a.suit <=> b.suit; c != 0) return c;
    return a.rank <=> b.rank;
  }

  constexpr Color color() const noexcept {
    return (suit == Suit::Clubs || suit == Suit::Spades) ? Color::Black : Color::Red;
  }

  /// Two-character code, e.g. "AS", "TD".
  std::string code() const;
  /// "Ace of Spades".
  std::string full_name() const;
};

/// All 52 cards in canonical order.
const std::array<CardName, 52>& all_cards();

/// Accepts a two-character code ("AS") or a full name ("Ace of Spades",
/// case-insensitive). Returns nullopt for anything else.
std::optional<CardName> parse_card(std::string_view token);

enum class Orientation : std::uint8_t { FaceUp, FaceDown };

constexpr Orientation flip(Orientation o) noexcept {
  return o == Orientation::FaceUp ? Orientation::FaceDown : Orientation::FaceUp;
}

std::string_view to_string(Orientation o);  // "up" / "down"
std::optional<Orientation> parse_orientation(std::string_view token);

enum class QualityKind : std::uint8_t { Crimp };

enum class QualitySite : std::uint8_t { WholeCard, CornerTL, CornerTR, CornerBL, CornerBR };

struct Quality {
  QualityKind kind = QualityKind::Crimp;
  QualitySite site = QualitySite::WholeCard;

  friend constexpr auto operator<=>(const Quality&, const Quality&) = default;
};

std::string_view to_string(QualitySite site);  // "whole", "tl", "tr", "bl", "br"
std::optional<QualitySite> parse_quality_site(std::string_view token);

struct CardEntry {
  CardName card;
  Orientation orientation = Orientation::FaceDown;
  // std::set keeps one quality per (kind, site).
  std::set<Quality> qualities;

  friend bool operator==(const CardEntry&, const CardEntry&) = default;
};

enum class PacketForm : std::uint8_t { Squared, Spread, Fan };

std::string_view to_string(PacketForm form);  // "squared", "spread", "fan"

enum class AggregateKind : std::uint8_t { Deck, Packet };

inline constexpr std::size_t kMinPacketSize = 2;
inline constexpr std::size_t kMaxPacketSize = 15;
inline constexpr std::size_t kDeckSize = 52;

/// Ordered cards, index 0 is the top card. Construction enforces the
/// aggregate invariants, so every StackState value in the program is valid.
class StackState {
 public:
  StackState() = default;
  StackState(std::vector<CardEntry> entries, PacketForm form, AggregateKind kind);

  /// Packet for 2..15 cards, Deck otherwise.
  static StackState with_natural_kind(std::vector<CardEntry> entries, PacketForm form);

  const std::vector<CardEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  PacketForm form() const noexcept { return form_; }
  AggregateKind aggregate_kind() const noexcept { return kind_; }

  /// 1-based access.
  const CardEntry& at(std::size_t position) const;

  /// Returns the 1-based position of a card, or nullopt.
  std::optional<std::size_t> position_of(const CardName& card) const;

  StackState with_entries(std::vector<CardEntry> entries) const;
  StackState with_form(PacketForm form) const;

  friend bool operator==(const StackState&, const StackState&) = default;

 private:
  std::vector<CardEntry> entries_;
  PacketForm form_ = PacketForm::Squared;
  AggregateKind kind_ = AggregateKind::Deck;
};

struct Location {
  enum class Kind : std::uint8_t { Top, Bottom, Position, WholePacket };

  Kind kind = Kind::Top;
  std::size_t n = 0;  // only meaningful for Position

  static Location top() { return {Kind::Top, 0}; }
  static Location bottom() { return {Kind::Bottom, 0}; }
  static Location whole_packet() { return {Kind::WholePacket, 0}; }
  /// Throws InvariantViolation for n < 1.
  static Location position(std::size_t n);

  friend bool operator==(const Location&, const Location&) = default;
};

/// A card playing a role over a span of steps, e.g. a crimped card acting as
/// "Locator Card" from step 2 until step 5.
struct RoleAssignment {
  CardName card;
  std::string role;
  std::size_t from_step = 0;
  std::optional<std::size_t> to_step;

  /// Throws InvariantViolation when to_step < from_step.
  static RoleAssignment make(CardName card, std::string role, std::size_t from_step,
                             std::optional<std::size_t> to_step = std::nullopt);

  bool active_at(std::size_t step) const noexcept {
    return step >= from_step && (!to_step || step <= *to_step);
  }
};

}  // namespace ocs
