#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ocs/card.hpp"
#include "ocs/linked_list.hpp"
#include "ocs/taxonomy.hpp"

namespace ocs {

/// What an instruction performs: a whole action class (dispatched through its
/// straight op or its single variant) or one specific variant.
struct ActionRef {
  enum class Kind { Class, Variant };

  Kind kind = Kind::Class;
  std::string id;

  static ActionRef of_class(std::string id) { return {Kind::Class, std::move(id)}; }
  static ActionRef of_variant(std::string id) { return {Kind::Variant, std::move(id)}; }

  friend bool operator==(const ActionRef&, const ActionRef&) = default;
};

struct Instruction {
  ActionRef action;
  Location focus;

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

struct StartEntry {
  CardName card;
  Orientation orientation = Orientation::FaceDown;

  friend bool operator==(const StartEntry&, const StartEntry&) = default;
};

struct EffectAssertion {
  std::map<CardName, Orientation> expected;

  friend bool operator==(const EffectAssertion&, const EffectAssertion&) = default;
};

enum class DocKind { Score, Performance };

std::string_view to_string(DocKind kind);

struct MethodDoc {
  std::string name;
  std::optional<std::string> creator;
  DocKind kind = DocKind::Score;
  Visibility visibility = Visibility::Public;
  std::set<CardName> available;
  std::set<CardName> unavailable;
  NodeList<StartEntry> start;
  NodeList<Instruction> instructions;
  std::optional<EffectAssertion> expect;

  /// Identifier used in exports and catalogs: "Overture" for "Overture".
  std::string id() const;

  /// Both throw the from_linked errors on malformed lists.
  std::vector<StartEntry> start_entries() const { return from_linked(start); }
  std::vector<Instruction> steps() const { return from_linked(instructions); }

  friend bool operator==(const MethodDoc&, const MethodDoc&) = default;
};

enum class ParseMode {
  /// Rejects anything that breaks a MethodDoc invariant.
  Strict,
  /// Keeps structurally or semantically broken documents so the validator
  /// can report them. Syntax and name resolution errors still throw.
  Lenient,
};

/// Resolves an action token: ids first (variant, then class), then names
/// (variant name, class primary name, unique alternative name).
/// Throws UnknownAction.
ActionRef resolve_action(const Taxonomy& t, std::string_view token);

/// Throws ParseError, UnknownAction, UnknownCard, NotImplemented, and in
/// strict mode CardNotAvailable, DuplicateStartCard, CyclicList,
/// MalformedTerminal, MultipleHeads.
MethodDoc parse_method(std::string_view text, const Taxonomy& t, ParseMode mode = ParseMode::Strict);

/// Canonical text: fixed key order, single spaces, LF endings, action ids.
std::string serialize_method(const MethodDoc& doc);

/// "top", "bottom", "pos 3", "packet"
std::string format_location(const Location& loc);
/// Inverse of format_location; also takes a leading '@' and "pos3".
std::optional<Location> parse_location(std::string_view s);

/// Sorted `ocs:` triples, one per line. Private taxonomy items and the effect
/// assertion are left out. Throws UnresolvedReference.
std::string export_triples(const MethodDoc& doc, const Taxonomy& t);

/// The action class an instruction ultimately names (a variant's owner).
/// Throws UnresolvedReference.
const ActionClass& action_class_of(const Taxonomy& t, const ActionRef& ref);

}  // namespace ocs
