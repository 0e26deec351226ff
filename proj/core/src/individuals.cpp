#include "ocs/individuals.hpp"

#include <set>

#include "ocs/card.hpp"
#include "ocs/error.hpp"
#include "ocs/text.hpp"

namespace ocs {

namespace {

constexpr std::pair<Relation, std::string_view> kRelationNames[] = {
    {Relation::HasDedicatedCardAction, "hasDedicatedCardAction"},
    {Relation::DedicatedCardActionFor, "dedicatedCardActionFor"},
    {Relation::HasParticipant, "hasParticipant"},
    {Relation::QualityOf, "qualityOf"},
};

}  // namespace

std::string_view to_string(Relation r) {
  for (const auto& [rel, name] : kRelationNames) {
    if (rel == r) return name;
  }
  return "hasParticipant";
}

IndividualGraph parse_individuals(std::string_view src) {
  IndividualGraph g;
  std::set<std::string> ids;
  std::size_t line_no = 0;
  for (auto line : text::lines(src)) {
    ++line_no;
    auto toks = text::tokenize(line, line_no);
    if (toks.empty()) continue;
    if (toks[0].value == "individual") {
      std::string id, type;
      if (toks.size() == 4 && toks[2].value == ":") {
        id = toks[1].value;
        type = toks[3].value;
      } else if (toks.size() == 3 && toks[1].value.size() > 1 && toks[1].value.back() == ':') {
        id = toks[1].value.substr(0, toks[1].value.size() - 1);
        type = toks[2].value;
      } else {
        throw ParseError(line_no, toks[0].column, "expected 'individual <id> : <type>'");
      }
      if (parse_card(id)) throw ParseError(line_no, toks[1].column, "'" + id + "' is reserved for a playing card");
      if (!ids.insert(id).second) throw Error(ErrorCode::DuplicateId, "individual " + id + " declared twice");
      g.individuals.push_back({id, type, line_no});
    } else if (toks[0].value == "assert") {
      if (toks.size() != 4) throw ParseError(line_no, toks[0].column, "expected 'assert <subject> <relation> <object>'");
      std::optional<Relation> rel;
      for (const auto& [r, name] : kRelationNames) {
        if (toks[2].value == name) rel = r;
      }
      if (!rel) throw ParseError(line_no, toks[2].column, "unknown relation '" + toks[2].value + "'");
      g.assertions.push_back({toks[1].value, *rel, toks[3].value, line_no});
    } else {
      throw ParseError(line_no, toks[0].column, "unknown key '" + toks[0].value + "'");
    }
  }
  return g;
}

void merge_into(IndividualGraph& into, const IndividualGraph& other) {
  std::set<std::string> ids;
  for (const auto& i : into.individuals) ids.insert(i.id);
  for (const auto& i : other.individuals) {
    if (!ids.insert(i.id).second) throw Error(ErrorCode::DuplicateId, "individual " + i.id + " declared twice");
    into.individuals.push_back(i);
  }
  into.assertions.insert(into.assertions.end(), other.assertions.begin(), other.assertions.end());
}

}  // namespace ocs
