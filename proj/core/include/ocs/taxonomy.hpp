#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ocs/card.hpp"
#include "ocs/permutation.hpp"
#include "ocs/violation.hpp"

namespace ocs {

enum class ActionKind { Sleight, Straight, Abstract };
enum class Visibility { Public, Private };

std::string_view to_string(ActionKind kind);
std::string_view to_string(Visibility vis);

/// Built-in ancestor classes. They exist in every taxonomy and are never
/// written to a taxonomy file.
namespace builtin {
inline constexpr std::string_view kProcess = "process";
inline constexpr std::string_view kCardAction = "card_action";
inline constexpr std::string_view kQuality = "quality";
inline constexpr std::string_view kInformationContentEntity = "information_content_entity";
}  // namespace builtin

inline constexpr std::size_t kMaxActionDepth = 4;

/// State semantics of a straight action, dispatched by the simulator.
enum class StraightOp {
  Spread,        // set form to Spread
  Square,        // set form to Squared
  Fan,           // set form to Fan
  FlipCard,      // turn one card over at the focus
  FlipPacket,    // reverse and flip the whole packet
  CrimpAdd,      // put a crimp in the focused card
  CrimpRemove,   // take the crimp out
  CutToQuality,  // cut the topmost crimped card to the top
  Cut,           // cut the focused number of cards to the bottom
  Identity,      // no state change
};

std::string_view to_string(StraightOp op);
std::optional<StraightOp> parse_straight_op(std::string_view s);

struct StraightBinding {
  StraightOp op = StraightOp::Identity;
  QualitySite site = QualitySite::WholeCard;  // crimp ops only

  friend bool operator==(const StraightBinding&, const StraightBinding&) = default;
};

struct ActionMetadata {
  std::string definition;
  std::optional<std::string> definition_source;
  std::optional<std::string> archive_link;
  std::optional<std::string> credits_link;
  std::optional<std::string> elucidation;

  friend bool operator==(const ActionMetadata&, const ActionMetadata&) = default;
};

struct ActionClass {
  std::string id;
  std::string primary_name;
  std::vector<std::string> alt_names;
  std::string parent;  // empty only for top-level built-ins
  ActionKind kind = ActionKind::Abstract;
  Visibility visibility = Visibility::Public;
  ActionMetadata metadata;
  std::optional<StraightBinding> binding;
  bool builtin = false;

  friend bool operator==(const ActionClass&, const ActionClass&) = default;
};

struct SleightTransform {
  Permutation perm;
  std::set<std::size_t> flips;  // output positions flipped after permuting

  friend bool operator==(const SleightTransform&, const SleightTransform&) = default;
};

/// One executable variant of an action, e.g. "Jordan Count (4 as 4)": a black
/// box taking exactly `participants` cards to a new order and orientation.
struct SleightVariant {
  std::string id;
  std::string class_id;
  std::optional<std::string> name;
  std::size_t participants = 0;
  SleightTransform transform;
  std::optional<std::string> start_state_note;
  std::optional<std::string> end_state_note;
  Visibility visibility = Visibility::Public;

  std::string display_name() const { return name.value_or(id); }

  friend bool operator==(const SleightVariant&, const SleightVariant&) = default;
};

class Taxonomy {
 public:
  /// Adds the built-in classes and checks every link: DuplicateId,
  /// DuplicatePrimaryName, UnknownParent, CyclicParent, UnknownId (variant
  /// class), SizeMismatch / OutOfRange (variant transform shape).
  static Taxonomy build(std::vector<ActionClass> classes, std::vector<SleightVariant> variants);

  const std::map<std::string, ActionClass, std::less<>>& classes() const noexcept { return classes_; }
  const std::map<std::string, SleightVariant, std::less<>>& variants() const noexcept { return variants_; }

  const ActionClass* find_class(std::string_view id) const;
  const SleightVariant* find_variant(std::string_view id) const;
  /// Throws UnknownId.
  const ActionClass& get_class(std::string_view id) const;
  const SleightVariant& get_variant(std::string_view id) const;

  std::vector<const SleightVariant*> variants_of(std::string_view class_id) const;
  std::vector<const ActionClass*> children_of(std::string_view class_id) const;

  /// True when `id` equals `ancestor` or has it on its parent chain.
  bool descends_from(std::string_view id, std::string_view ancestor) const;
  bool is_card_action(std::string_view id) const { return descends_from(id, builtin::kCardAction); }

  friend bool operator==(const Taxonomy&, const Taxonomy&) = default;

 private:
  std::map<std::string, ActionClass, std::less<>> classes_;
  std::map<std::string, SleightVariant, std::less<>> variants_;
};

/// Parses the line-oriented taxonomy format. Throws ParseError and the
/// Taxonomy::build errors.
Taxonomy load_taxonomy(std::string_view text);

/// Canonical text; load_taxonomy(serialize_taxonomy(t)) == t.
std::string serialize_taxonomy(const Taxonomy& t);

/// Parent edges from `id` to Card Action. Throws UnknownId,
/// NotUnderCardAction.
std::size_t depth(const Taxonomy& t, std::string_view id);

/// Classes whose primary or alternative name equals `name`, ignoring case.
/// Primary-name matches come first.
std::vector<const ActionClass*> lookup(const Taxonomy& t, std::string_view name);

/// Throws UnknownId.
SleightTransform variant_transform(const Taxonomy& t, std::string_view variant_id);

/// DEPTH-BOUND and ONLY-RANGE errors, COHERENCE-EMPTY-CLASS warnings for
/// sleight classes without variants.
std::vector<Violation> validate_taxonomy(const Taxonomy& t);

}  // namespace ocs
