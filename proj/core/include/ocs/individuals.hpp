#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ocs {

enum class Relation { HasDedicatedCardAction, DedicatedCardActionFor, HasParticipant, QualityOf };

std::string_view to_string(Relation r);

struct Individual {
  std::string id;
  std::string type;  // class or variant id
  std::size_t line = 0;

  friend bool operator==(const Individual&, const Individual&) = default;
};

struct RelationAssertion {
  std::string subject;
  Relation relation = Relation::HasParticipant;
  std::string object;
  std::size_t line = 0;

  friend bool operator==(const RelationAssertion&, const RelationAssertion&) = default;
};

/// Typed individuals and the relations asserted between them. Playing
/// cards need no declaration: a card code such as `AS` names the card.
struct IndividualGraph {
  std::vector<Individual> individuals;
  std::vector<RelationAssertion> assertions;

  bool empty() const noexcept { return individuals.empty() && assertions.empty(); }
  friend bool operator==(const IndividualGraph&, const IndividualGraph&) = default;
};

/// Lines are `individual <id> : <type>` and `assert <subject> <relation>
/// <object>`. Throws ParseError, DuplicateId.
IndividualGraph parse_individuals(std::string_view text);

/// Appends `other`, keeping both parts' line numbers. Throws DuplicateId.
void merge_into(IndividualGraph& into, const IndividualGraph& other);

}  // namespace ocs
