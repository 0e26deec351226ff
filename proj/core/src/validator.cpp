#include "ocs/validator.hpp"

#include <map>
#include <set>

#include "ocs/error.hpp"
#include "ocs/name_index.hpp"

namespace ocs {

namespace {

std::string step_subject(const MethodDoc& doc, std::size_t step) {
  return doc.id() + "/step " + std::to_string(step);
}

template <class T>
void check_list(const NodeList<T>& list, const std::string& subject, std::string_view what,
                std::vector<Violation>& out) {
  auto d = diagnose(list);
  auto node = [&](NodeId id) { return std::string(what) + " node " + std::to_string(id + 1); };
  if (d.head_missing) out.push_back({RuleId::SingleHead, subject, Severity::Error, std::string(what) + " list has no head"});
  for (auto id : d.extra_heads) {
    out.push_back({RuleId::SingleHead, subject, Severity::Error, node(id) + " has no predecessor besides the head"});
  }
  if (!d.cycle_nodes.empty()) {
    std::string nodes;
    for (auto id : d.cycle_nodes) nodes += (nodes.empty() ? "" : ", ") + std::to_string(id + 1);
    out.push_back({RuleId::AcyclicPrecedes, subject, Severity::Error,
                   std::string(what) + " nodes " + nodes + " precede themselves"});
  }
  for (auto id : d.content_terminals) {
    out.push_back({RuleId::TerminalEmpty, subject, Severity::Error, node(id) + " ends the list but is not empty"});
  }
  for (auto id : d.linked_empty_nodes) {
    out.push_back({RuleId::TerminalEmpty, subject, Severity::Error, "empty " + node(id) + " has a successor"});
  }
  for (auto id : d.dangling) {
    out.push_back({RuleId::TerminalEmpty, subject, Severity::Error, node(id) + " links outside the list"});
  }
}

/// The variant an instruction executes, when it is fixed statically.
const SleightVariant* executed_variant(const Taxonomy& t, const ActionRef& ref, std::size_t stack_size) {
  if (ref.kind == ActionRef::Kind::Variant) return t.find_variant(ref.id);
  const auto* c = t.find_class(ref.id);
  if (!c || c->binding) return nullptr;
  auto vs = t.variants_of(c->id);
  if (vs.size() == 1) return vs.front();
  for (const auto* v : vs) {
    if (v->participants == stack_size) return nullptr;
  }
  return vs.empty() ? nullptr : vs.front();
}

}  // namespace

std::vector<Violation> check_method(const MethodDoc& doc, const Taxonomy& t) {
  std::vector<Violation> out;
  const auto subject = doc.id();
  check_list(doc.start, subject, "start", out);
  check_list(doc.instructions, subject, "instruction", out);

  // Arena order numbers content nodes as the file numbers its steps.
  std::size_t step_no = 0;
  std::size_t start_size = 0;
  for (const auto& n : doc.start.nodes) start_size += n.content ? 1 : 0;
  for (const auto& node : doc.instructions.nodes) {
    if (!node.content) continue;
    ++step_no;
    const auto& ref = node.content->action;
    const ActionClass* cls = nullptr;
    try {
      cls = &action_class_of(t, ref);
    } catch (const Error& e) {
      out.push_back({RuleId::OnlyRange, step_subject(doc, step_no), Severity::Error, e.what()});
      continue;
    }
    if (!t.is_card_action(cls->id)) {
      out.push_back({RuleId::OnlyRange, step_subject(doc, step_no), Severity::Error,
                     "performs " + cls->id + ", which is not a Card Action"});
      continue;
    }
    if (const auto* v = executed_variant(t, ref, start_size); v && v->participants != start_size) {
      out.push_back({RuleId::ExactlyN, step_subject(doc, step_no), Severity::Error,
                     v->display_name() + " takes exactly " + std::to_string(v->participants) + " cards, the method has " +
                         std::to_string(start_size)});
    }
  }

  if (doc.available.empty()) {
    out.push_back({RuleId::AvailableCards, subject, Severity::Error, "no available cards"});
  }
  for (const auto& c : doc.unavailable) {
    if (doc.available.count(c)) {
      out.push_back({RuleId::AvailableCards, subject, Severity::Error, c.code() + " is both available and unavailable"});
    }
  }
  std::set<CardName> seen;
  for (const auto& n : doc.start.nodes) {
    if (!n.content) continue;
    const auto& card = n.content->card;
    if (!seen.insert(card).second) {
      out.push_back({RuleId::AvailableCards, subject, Severity::Error, card.code() + " starts in the stack twice"});
    }
    if (!doc.available.count(card)) {
      out.push_back({RuleId::AvailableCards, subject, Severity::Error, card.code() + " starts in the stack but is not available"});
    }
  }
  if (doc.expect) {
    for (const auto& [card, o] : doc.expect->expected) {
      if (!doc.available.count(card)) {
        out.push_back({RuleId::AvailableCards, subject, Severity::Error, card.code() + " is asserted but not available"});
      }
    }
  }
  sort_violations(out);
  return out;
}

std::vector<Violation> check_individuals(const Taxonomy& t, const IndividualGraph& g) {
  std::map<std::string, const Individual*> by_id;
  std::map<std::string, std::string> class_of;
  for (const auto& i : g.individuals) {
    by_id[i.id] = &i;
    if (const auto* v = t.find_variant(i.type)) {
      class_of[i.id] = v->class_id;
    } else if (t.find_class(i.type)) {
      class_of[i.id] = i.type;
    } else {
      throw Error(ErrorCode::UnresolvedReference,
                  "line " + std::to_string(i.line) + ": individual " + i.id + " has unknown type " + i.type);
    }
  }
  auto is_card = [&](const std::string& id) { return !by_id.count(id) && parse_card(id).has_value(); };
  for (const auto& a : g.assertions) {
    for (const auto* end : {&a.subject, &a.object}) {
      if (!by_id.count(*end) && !is_card(*end)) {
        throw Error(ErrorCode::UnresolvedReference,
                    "line " + std::to_string(a.line) + ": " + *end + " is neither a declared individual nor a card");
      }
    }
  }
  auto is_a = [&](const std::string& id, std::string_view ancestor) {
    auto it = class_of.find(id);
    return it != class_of.end() && t.descends_from(it->second, ancestor);
  };

  std::vector<Violation> out;
  std::map<std::string, std::set<std::string>> dedicated_to;  // action -> subjects
  std::map<std::string, std::set<std::string>> actions_of;    // subject -> actions
  std::map<std::string, std::set<CardName>> participants;
  for (const auto& a : g.assertions) {
    const std::string rel(to_string(a.relation));
    auto range = [&](const std::string& detail) {
      out.push_back({RuleId::OnlyRange, a.subject, Severity::Error, rel + " " + a.object + ": " + detail});
    };
    switch (a.relation) {
      case Relation::HasDedicatedCardAction:
      case Relation::DedicatedCardActionFor: {
        const bool forward = a.relation == Relation::HasDedicatedCardAction;
        const auto& holder = forward ? a.subject : a.object;
        const auto& action = forward ? a.object : a.subject;
        if (!is_a(action, builtin::kCardAction)) range(action + " is not a Card Action individual");
        if (!forward && !is_a(holder, kCrimpClass)) range(holder + " is not a Crimp");
        dedicated_to[action].insert(holder);
        actions_of[holder].insert(action);
        break;
      }
      case Relation::HasParticipant:
        if (!is_card(a.object)) {
          range(a.object + " is not a playing card");
        } else {
          participants[a.subject].insert(*parse_card(a.object));
        }
        break;
      case Relation::QualityOf:
        if (!is_a(a.subject, builtin::kQuality)) range(a.subject + " is not a quality");
        if (!is_card(a.object)) range(a.object + " is not a playing card");
        break;
    }
  }

  for (const auto& i : g.individuals) {
    if (const auto* v = t.find_variant(i.type)) {
      const auto n = participants[i.id].size();
      if (n != v->participants) {
        out.push_back({RuleId::ExactlyN, i.id, Severity::Error,
                       v->display_name() + " needs exactly " + std::to_string(v->participants) +
                           " participating cards, found " + std::to_string(n)});
      }
    }
    if (t.find_class(kCrimpClass) && is_a(i.id, kCrimpClass)) {
      bool has = false;
      for (const auto& action : actions_of[i.id]) has = has || is_a(action, kCrimpUseClass);
      if (!has) {
        out.push_back({RuleId::SomeExists, i.id, Severity::Error,
                       "no dedicated card action of type " + std::string(kCrimpUseClass)});
      }
    }
  }
  for (const auto& [action, holders] : dedicated_to) {
    if (holders.size() > 1) {
      std::string who;
      for (const auto& h : holders) who += (who.empty() ? "" : ", ") + h;
      out.push_back({RuleId::InverseFunctional, action, Severity::Error, "dedicated to several individuals: " + who});
    }
  }
  sort_violations(out);
  return out;
}

ValidationReport check_all(const Taxonomy& t, std::span<const MethodDoc> docs, const IndividualGraph& g) {
  ValidationReport r;
  std::set<std::string> populated;
  for (const auto& i : g.individuals) {
    if (const auto* v = t.find_variant(i.type)) {
      populated.insert(v->class_id);
    } else {
      populated.insert(i.type);
    }
  }
  for (auto& v : validate_taxonomy(t)) {
    if (v.rule == RuleId::CoherenceEmptyClass && populated.count(v.subject)) continue;
    r.violations.push_back(std::move(v));
  }
  for (auto& v : check_names(t)) r.violations.push_back(std::move(v));
  for (const auto& doc : docs) {
    for (auto& v : check_method(doc, t)) r.violations.push_back(std::move(v));
  }
  for (auto& v : check_individuals(t, g)) r.violations.push_back(std::move(v));
  sort_violations(r.violations);
  for (const auto& v : r.violations) {
    if (v.severity == Severity::Error) r.consistent = false;
    if (v.rule == RuleId::CoherenceEmptyClass) r.coherent = false;
  }
  r.coherent = r.coherent && r.consistent;
  return r;
}

}  // namespace ocs
