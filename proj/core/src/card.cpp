#include "ocs/card.hpp"

#include <algorithm>
#include <cctype>

#include "ocs/error.hpp"

namespace ocs {
namespace {

constexpr std::string_view kRankCodes = "A23456789TJQK";
constexpr std::string_view kSuitCodes = "CHSD";

constexpr std::array<std::string_view, 13> kRankWords = {
    "Ace", "Two", "Three", "Four", "Five", "Six", "Seven",
    "Eight", "Nine", "Ten", "Jack", "Queen", "King"};
constexpr std::array<std::string_view, 4> kSuitWords = {"Clubs", "Hearts", "Spades", "Diamonds"};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

std::optional<CardName> parse_full_name(std::string_view token) {
  // "<Rank> of <Suit>"
  auto first_space = token.find(' ');
  auto last_space = token.rfind(' ');
  if (first_space == std::string_view::npos || first_space == last_space) return std::nullopt;
  auto rank_word = token.substr(0, first_space);
  auto middle = token.substr(first_space + 1, last_space - first_space - 1);
  auto suit_word = token.substr(last_space + 1);
  if (!iequals(middle, "of")) return std::nullopt;
  std::optional<Rank> rank;
  for (std::size_t i = 0; i < kRankWords.size(); ++i) {
    if (iequals(rank_word, kRankWords[i])) rank = static_cast<Rank>(i + 1);
  }
  std::optional<Suit> suit;
  for (std::size_t i = 0; i < kSuitWords.size(); ++i) {
    if (iequals(suit_word, kSuitWords[i])) suit = static_cast<Suit>(i);
  }
  if (!rank || !suit) return std::nullopt;
  return CardName{*rank, *suit};
}

}  // namespace

std::string CardName::code() const {
  return {kRankCodes[static_cast<std::size_t>(rank) - 1], kSuitCodes[static_cast<std::size_t>(suit)]};
}

std::string CardName::full_name() const {
  return std::string(kRankWords[static_cast<std::size_t>(rank) - 1]) + " of " +
         std::string(kSuitWords[static_cast<std::size_t>(suit)]);
}

const std::array<CardName, 52>& all_cards() {
  static const std::array<CardName, 52> cards = [] {
    std::array<CardName, 52> out{};
    std::size_t i = 0;
    for (std::size_t s = 0; s < 4; ++s) {
      for (std::size_t r = 1; r <= 13; ++r) {
        out[i++] = CardName{static_cast<Rank>(r), static_cast<Suit>(s)};
      }
    }
    return out;
  }();
  return cards;
}

std::optional<CardName> parse_card(std::string_view token) {
  if (token.size() == 2) {
    auto r = kRankCodes.find(token[0]);
    auto s = kSuitCodes.find(token[1]);
    if (r == std::string_view::npos || s == std::string_view::npos) return std::nullopt;
    return CardName{static_cast<Rank>(r + 1), static_cast<Suit>(s)};
  }
  return parse_full_name(token);
}

std::string_view to_string(Orientation o) { return o == Orientation::FaceUp ? "up" : "down"; }

std::optional<Orientation> parse_orientation(std::string_view token) {
  if (token == "up") return Orientation::FaceUp;
  if (token == "down") return Orientation::FaceDown;
  return std::nullopt;
}

std::string_view to_string(QualitySite site) {
  switch (site) {
    case QualitySite::WholeCard: return "whole";
    case QualitySite::CornerTL: return "tl";
    case QualitySite::CornerTR: return "tr";
    case QualitySite::CornerBL: return "bl";
    case QualitySite::CornerBR: return "br";
  }
  return "whole";
}

std::optional<QualitySite> parse_quality_site(std::string_view token) {
  for (auto site : {QualitySite::WholeCard, QualitySite::CornerTL, QualitySite::CornerTR,
                    QualitySite::CornerBL, QualitySite::CornerBR}) {
    if (token == to_string(site)) return site;
  }
  return std::nullopt;
}

std::string_view to_string(PacketForm form) {
  switch (form) {
    case PacketForm::Squared: return "squared";
    case PacketForm::Spread: return "spread";
    case PacketForm::Fan: return "fan";
  }
  return "squared";
}

StackState::StackState(std::vector<CardEntry> entries, PacketForm form, AggregateKind kind)
    : entries_(std::move(entries)), form_(form), kind_(kind) {
  std::set<CardName> seen;
  for (const auto& e : entries_) {
    if (!seen.insert(e.card).second) {
      throw Error(ErrorCode::InvariantViolation, "card " + e.card.code() + " appears twice in stack");
    }
  }
  if (kind_ == AggregateKind::Packet &&
      (entries_.size() < kMinPacketSize || entries_.size() > kMaxPacketSize)) {
    throw Error(ErrorCode::InvariantViolation,
                "a packet holds between 2 and 15 cards, got " + std::to_string(entries_.size()));
  }
  if (entries_.size() > kDeckSize) {
    throw Error(ErrorCode::InvariantViolation,
                "a deck holds at most 52 cards, got " + std::to_string(entries_.size()));
  }
}

StackState StackState::with_natural_kind(std::vector<CardEntry> entries, PacketForm form) {
  auto n = entries.size();
  auto kind = (n >= kMinPacketSize && n <= kMaxPacketSize) ? AggregateKind::Packet : AggregateKind::Deck;
  return StackState(std::move(entries), form, kind);
}

const CardEntry& StackState::at(std::size_t position) const {
  if (position < 1 || position > entries_.size()) {
    throw Error(ErrorCode::OutOfRange, "position " + std::to_string(position) + " in stack of " +
                                           std::to_string(entries_.size()));
  }
  return entries_[position - 1];
}

std::optional<std::size_t> StackState::position_of(const CardName& card) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].card == card) return i + 1;
  }
  return std::nullopt;
}

StackState StackState::with_entries(std::vector<CardEntry> entries) const {
  return StackState(std::move(entries), form_, kind_);
}

StackState StackState::with_form(PacketForm form) const {
  StackState out = *this;
  out.form_ = form;
  return out;
}

Location Location::position(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvariantViolation, "positions are 1-based");
  return {Kind::Position, n};
}

RoleAssignment RoleAssignment::make(CardName card, std::string role, std::size_t from_step,
                                    std::optional<std::size_t> to_step) {
  if (to_step && *to_step < from_step) {
    throw Error(ErrorCode::InvariantViolation, "role ends before it starts");
  }
  return RoleAssignment{card, std::move(role), from_step, to_step};
}

}  // namespace ocs
