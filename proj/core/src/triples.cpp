#include <algorithm>
#include <vector>

#include "ocs/error.hpp"
#include "ocs/method.hpp"
#include "ocs/text.hpp"

namespace ocs {

namespace {

std::string iri(std::string_view local) { return "ocs:" + std::string(local); }

std::string location_iri(const Location& loc) {
  switch (loc.kind) {
    case Location::Kind::Top: return iri("TopCardOfPacket");
    case Location::Kind::Bottom: return iri("BottomCardOfPacket");
    case Location::Kind::Position: return iri("CardAtPosition_" + std::to_string(loc.n));
    case Location::Kind::WholePacket: return iri("WholePacket");
  }
  return iri("TopCardOfPacket");
}

std::string card_iri(const CardName& c) { return iri(text::camel_case(c.full_name())); }

std::string orientation_iri(Orientation o) { return iri(o == Orientation::FaceUp ? "FaceUp" : "FaceDown"); }

/// The public action an instruction may be exported as: the variant itself,
/// or failing that the nearest public class on its parent chain.
std::optional<std::string> action_iri(const Taxonomy& t, const ActionRef& ref) {
  const ActionClass* cls = nullptr;
  if (ref.kind == ActionRef::Kind::Variant) {
    const auto* v = t.find_variant(ref.id);
    if (!v) throw Error(ErrorCode::UnresolvedReference, "variant " + ref.id);
    if (v->visibility == Visibility::Public) {
      const auto* owner = t.find_class(v->class_id);
      if (owner && owner->visibility == Visibility::Public) return iri(text::mangle_identifier(v->display_name()));
    }
    cls = t.find_class(v->class_id);
  } else {
    cls = t.find_class(ref.id);
  }
  if (!cls) throw Error(ErrorCode::UnresolvedReference, "class " + ref.id);
  while (cls && cls->visibility == Visibility::Private) {
    cls = cls->parent.empty() ? nullptr : t.find_class(cls->parent);
  }
  if (!cls) return std::nullopt;
  return iri(text::mangle_identifier(cls->primary_name));
}

}  // namespace

std::string export_triples(const MethodDoc& doc, const Taxonomy& t) {
  std::vector<std::string> lines;
  auto add = [&](const std::string& s, std::string_view p, const std::string& o) {
    lines.push_back(s + " " + iri(p) + " " + o + " .");
  };
  const std::string base = text::mangle_identifier(doc.id());
  const std::string subject = iri(base + "Method");

  add(subject, "type", iri("CardTrickMethod"));
  add(subject, "hasName", text::quote(doc.name));
  add(subject, "documentKind", iri(doc.kind == DocKind::Score ? "Score" : "Performance"));
  if (doc.creator) add(subject, "hasCreator", text::quote(*doc.creator));
  for (const auto& c : doc.available) add(subject, "availableCards", card_iri(c));
  for (const auto& c : doc.unavailable) add(subject, "unavailableCards", card_iri(c));

  auto ss_node = [&](std::size_t k) { return iri(base + "_ss_" + std::to_string(k)); };
  const auto entries = doc.start_entries();
  add(subject, "hasStartingState", ss_node(1));
  for (std::size_t k = 1; k <= entries.size(); ++k) {
    const auto& e = entries[k - 1];
    add(ss_node(k), "type", iri("CardStackStateInstruction"));
    add(ss_node(k), "hasCardName", card_iri(e.card));
    add(ss_node(k), "hasOrientation", orientation_iri(e.orientation));
    add(ss_node(k), "nextCardStackStateInstruction", ss_node(k + 1));
  }
  add(ss_node(entries.size() + 1), "type", iri("EmptyCardStackStateInstruction"));

  auto ins_node = [&](std::size_t k) { return iri(base + "_ins_" + std::to_string(k)); };
  const auto steps = doc.steps();
  add(subject, "firstCardActionInstruction", ins_node(1));
  for (std::size_t k = 1; k <= steps.size(); ++k) {
    const auto& ins = steps[k - 1];
    add(ins_node(k), "type", iri("CardActionInstruction"));
    if (auto a = action_iri(t, ins.action)) add(ins_node(k), "performCardAction", *a);
    add(ins_node(k), "focusOnCardLocation", location_iri(ins.focus));
    add(ins_node(k), "immediatelyPrecedesCardActionInstruction", ins_node(k + 1));
  }
  add(ins_node(steps.size() + 1), "type", iri("EmptyCardActionInstruction"));

  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

}  // namespace ocs
