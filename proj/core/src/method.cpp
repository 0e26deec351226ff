#include "ocs/method.hpp"

#include <charconv>

#include "ocs/error.hpp"
#include "ocs/text.hpp"

namespace ocs {

std::string_view to_string(DocKind kind) { return kind == DocKind::Score ? "score" : "performance"; }

std::string MethodDoc::id() const { return text::camel_case(name); }

ActionRef resolve_action(const Taxonomy& t, std::string_view token) {
  if (t.find_variant(token)) return ActionRef::of_variant(std::string(token));
  if (t.find_class(token)) return ActionRef::of_class(std::string(token));
  for (const auto& [id, v] : t.variants()) {
    if (v.name && text::iequals(*v.name, token)) return ActionRef::of_variant(id);
  }
  auto hits = lookup(t, token);
  if (hits.empty()) throw Error(ErrorCode::UnknownAction, "\"" + std::string(token) + "\"");
  if (text::iequals(hits.front()->primary_name, token) || hits.size() == 1) {
    return ActionRef::of_class(hits.front()->id);
  }
  std::string ids;
  for (auto* c : hits) ids += (ids.empty() ? "" : ", ") + c->id;
  throw Error(ErrorCode::UnknownAction, "\"" + std::string(token) + "\" is ambiguous: " + ids);
}

const ActionClass& action_class_of(const Taxonomy& t, const ActionRef& ref) {
  std::string_view class_id = ref.id;
  if (ref.kind == ActionRef::Kind::Variant) {
    const auto* v = t.find_variant(ref.id);
    if (!v) throw Error(ErrorCode::UnresolvedReference, "variant " + ref.id);
    class_id = v->class_id;
  }
  const auto* c = t.find_class(class_id);
  if (!c) throw Error(ErrorCode::UnresolvedReference, "class " + std::string(class_id));
  return *c;
}

std::string format_location(const Location& loc) {
  switch (loc.kind) {
    case Location::Kind::Top: return "top";
    case Location::Kind::Bottom: return "bottom";
    case Location::Kind::Position: return "pos " + std::to_string(loc.n);
    case Location::Kind::WholePacket: return "packet";
  }
  return "top";
}

std::optional<Location> parse_location(std::string_view s) {
  auto v = text::trim(s);
  if (!v.empty() && v.front() == '@') v.remove_prefix(1);
  if (v == "top") return Location::top();
  if (v == "bottom") return Location::bottom();
  if (v == "packet") return Location::whole_packet();
  if (v.substr(0, 3) == "pos") {
    auto rest = text::trim(v.substr(3));
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
    if (!rest.empty() && ec == std::errc() && ptr == rest.data() + rest.size() && n >= 1) return Location::position(n);
  }
  return std::nullopt;
}

namespace {

using text::Token;

struct LinkSpec {
  enum class Kind { Default, Step, Empty, None } kind = Kind::Default;
  std::size_t step = 0;
};

struct RawStep {
  Instruction instruction;
  LinkSpec link;
  std::size_t line = 0;
};

std::optional<std::size_t> to_number(std::string_view s) {
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return n;
}

CardName card_token(const Token& tok, std::size_t line) {
  auto c = parse_card(tok.value);
  if (!c) throw Error(ErrorCode::UnknownCard, "line " + std::to_string(line) + ": '" + tok.value + "'");
  return *c;
}

Orientation orientation_token(const Token& tok, std::size_t line) {
  auto o = parse_orientation(tok.value);
  if (!o) throw ParseError(line, tok.column, "expected up or down, got '" + tok.value + "'");
  return *o;
}

class MethodParser {
 public:
  MethodParser(const Taxonomy& t, ParseMode mode) : t_(t), mode_(mode) {}

  MethodDoc parse(std::string_view src) {
    auto all = text::lines(src);
    bool saw_method = false, saw_end = false;
    std::size_t line_no = 0;
    for (auto line : all) {
      ++line_no;
      auto toks = text::tokenize(line, line_no);
      if (toks.empty()) continue;
      if (saw_end) throw ParseError(line_no, toks[0].column, "content after 'end'");
      const auto& key = toks[0].value;
      if (toks[0].quoted) throw ParseError(line_no, toks[0].column, "expected a keyword");
      if (!saw_method) {
        if (key != "method") throw ParseError(line_no, toks[0].column, "a method file starts with 'method \"<name>\"'");
        doc_.name = single_string(toks, line_no);
        saw_method = true;
        continue;
      }
      if (key == "creator") {
        once(key, toks[0], line_no);
        doc_.creator = single_string(toks, line_no);
      } else if (key == "kind") {
        once(key, toks[0], line_no);
        if (toks.size() != 2) throw ParseError(line_no, toks[0].column, "expected 'kind score|performance'");
        if (toks[1].value == "score") {
          doc_.kind = DocKind::Score;
        } else if (toks[1].value == "performance") {
          doc_.kind = DocKind::Performance;
        } else {
          throw ParseError(line_no, toks[1].column, "unknown kind '" + toks[1].value + "'");
        }
      } else if (key == "vis") {
        once(key, toks[0], line_no);
        if (toks.size() != 2 || (toks[1].value != "public" && toks[1].value != "private")) {
          throw ParseError(line_no, toks[0].column, "expected 'vis public|private'");
        }
        doc_.visibility = toks[1].value == "public" ? Visibility::Public : Visibility::Private;
      } else if (key == "available" || key == "unavailable") {
        once(key, toks[0], line_no);
        auto& target = key == "available" ? doc_.available : doc_.unavailable;
        for (std::size_t i = 1; i < toks.size(); ++i) {
          auto c = card_token(toks[i], line_no);
          if (!target.insert(c).second) {
            throw ParseError(line_no, toks[i].column, c.code() + " listed twice");
          }
        }
      } else if (key == "start") {
        once(key, toks[0], line_no);
        parse_start(toks, line_no);
      } else if (key == "step") {
        parse_step(toks, line_no);
      } else if (key == "expect:") {
        once(key, toks[0], line_no);
        parse_expect(toks, line_no);
      } else if (key == "end") {
        if (toks.size() != 1) throw ParseError(line_no, toks[1].column, "'end' takes no arguments");
        saw_end = true;
      } else {
        throw ParseError(line_no, toks[0].column, "unknown key '" + key + "'");
      }
    }
    if (!saw_method) throw ParseError(1, 0, "empty method file");
    if (!saw_end) throw ParseError(line_no, 0, "missing 'end'");
    if (!seen_.count("available")) throw ParseError(line_no, 0, "missing 'available' line");
    if (!seen_.count("start")) throw ParseError(line_no, 0, "missing 'start' line");
    build_instructions();
    if (mode_ == ParseMode::Strict) check_strict();
    return std::move(doc_);
  }

 private:
  const Taxonomy& t_;
  ParseMode mode_;
  MethodDoc doc_;
  std::set<std::string> seen_;
  std::vector<RawStep> steps_;

  void once(const std::string& key, const Token& tok, std::size_t line_no) {
    if (!seen_.insert(key).second) throw ParseError(line_no, tok.column, "duplicate '" + key + "'");
  }

  static std::string single_string(const std::vector<Token>& toks, std::size_t line_no) {
    if (toks.size() != 2 || !toks[1].quoted) {
      throw ParseError(line_no, toks[0].column, "'" + toks[0].value + "' takes one quoted string");
    }
    return toks[1].value;
  }

  void parse_start(const std::vector<Token>& toks, std::size_t line_no) {
    // start top-down: <CARD> <up|down> | <CARD> <up|down> | ...
    if (toks.size() < 2 || toks[1].value != "top-down:") {
      throw ParseError(line_no, toks[0].column, "expected 'start top-down: ...'");
    }
    std::vector<StartEntry> entries;
    std::size_t i = 2;
    while (i < toks.size()) {
      if (i + 1 >= toks.size()) throw ParseError(line_no, toks[i].column, "card without orientation");
      entries.push_back({card_token(toks[i], line_no), orientation_token(toks[i + 1], line_no)});
      i += 2;
      if (i < toks.size()) {
        if (toks[i].value != "|" || toks[i].quoted) throw ParseError(line_no, toks[i].column, "expected '|'");
        ++i;
        if (i == toks.size()) throw ParseError(line_no, toks[i - 1].column, "trailing '|'");
      }
    }
    doc_.start = to_linked(entries);
  }

  void parse_expect(const std::vector<Token>& toks, std::size_t line_no) {
    // expect: <CARD> <up|down>, <CARD> <up|down>, ...
    EffectAssertion e;
    std::size_t i = 1;
    while (i < toks.size()) {
      if (i + 1 >= toks.size()) throw ParseError(line_no, toks[i].column, "card without orientation");
      auto card = card_token(toks[i], line_no);
      Token orient = toks[i + 1];
      bool comma = !orient.value.empty() && orient.value.back() == ',';
      if (comma) orient.value.pop_back();
      if (!e.expected.emplace(card, orientation_token(orient, line_no)).second) {
        throw ParseError(line_no, toks[i].column, card.code() + " asserted twice");
      }
      i += 2;
      if (i < toks.size() && toks[i].value == ",") {
        comma = true;
        ++i;
      }
      if (i < toks.size() && !comma) throw ParseError(line_no, toks[i].column, "expected ','");
      if (i == toks.size() && comma) throw ParseError(line_no, toks[i - 1].column, "trailing ','");
    }
    doc_.expect = std::move(e);
  }

  Location parse_focus(const std::vector<Token>& toks, std::size_t& i, std::size_t line_no) {
    if (i >= toks.size() || toks[i].quoted || toks[i].value.empty() || toks[i].value[0] != '@') {
      throw ParseError(line_no, i < toks.size() ? toks[i].column : 0, "expected a location such as @top");
    }
    auto where = std::string_view(toks[i].value).substr(1);
    auto col = toks[i].column;
    ++i;
    if (where == "top") return Location::top();
    if (where == "bottom") return Location::bottom();
    if (where == "packet") return Location::whole_packet();
    if (where == "pos") {
      std::optional<std::size_t> n;
      if (i < toks.size()) n = to_number(toks[i].value);
      if (!n || *n < 1) throw ParseError(line_no, col, "expected '@pos N' with N >= 1");
      ++i;
      return Location::position(*n);
    }
    if (where == "pocket" || where == "spectator") {
      throw Error(ErrorCode::NotImplemented,
                  "line " + std::to_string(line_no) + ": only locations within the stack are supported");
    }
    throw ParseError(line_no, col, "unknown location '@" + std::string(where) + "'");
  }

  void parse_step(const std::vector<Token>& toks, std::size_t line_no) {
    // step <n>: <action> @<loc> [-> step <m> | -> empty | -> none]
    if (toks.size() < 4) throw ParseError(line_no, toks[0].column, "expected 'step <n>: <action> @<location>'");
    std::string_view label = toks[1].value;
    if (label.empty() || label.back() != ':') throw ParseError(line_no, toks[1].column, "expected 'step <n>:'");
    auto n = to_number(label.substr(0, label.size() - 1));
    if (!n || *n != steps_.size() + 1) {
      throw ParseError(line_no, toks[1].column, "expected step " + std::to_string(steps_.size() + 1));
    }
    RawStep raw;
    raw.line = line_no;
    raw.instruction.action = resolve_action(t_, toks[2].value);
    std::size_t i = 3;
    raw.instruction.focus = parse_focus(toks, i, line_no);
    if (i < toks.size()) {
      if (toks[i].value != "->") throw ParseError(line_no, toks[i].column, "unexpected '" + toks[i].value + "'");
      ++i;
      if (i + 1 == toks.size() && toks[i].value == "empty") {
        raw.link.kind = LinkSpec::Kind::Empty;
      } else if (i + 1 == toks.size() && toks[i].value == "none") {
        raw.link.kind = LinkSpec::Kind::None;
      } else if (i + 2 == toks.size() && toks[i].value == "step" && to_number(toks[i + 1].value)) {
        raw.link.kind = LinkSpec::Kind::Step;
        raw.link.step = *to_number(toks[i + 1].value);
      } else {
        throw ParseError(line_no, toks[i - 1].column, "expected '-> step <m>', '-> empty' or '-> none'");
      }
    }
    steps_.push_back(std::move(raw));
  }

  void build_instructions() {
    auto& list = doc_.instructions;
    const std::size_t n = steps_.size();
    bool needs_empty = n == 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& link = steps_[i].link;
      if (link.kind == LinkSpec::Kind::Empty || (link.kind == LinkSpec::Kind::Default && i + 1 == n)) {
        needs_empty = true;
      }
      if (link.kind == LinkSpec::Kind::Step && (link.step < 1 || link.step > n)) {
        throw ParseError(steps_[i].line, 0, "link to missing step " + std::to_string(link.step));
      }
    }
    const NodeId empty_id = n;
    for (std::size_t i = 0; i < n; ++i) {
      typename NodeList<Instruction>::Node node;
      node.content = steps_[i].instruction;
      switch (steps_[i].link.kind) {
        case LinkSpec::Kind::Default: node.next = i + 1; break;
        case LinkSpec::Kind::Step: node.next = steps_[i].link.step - 1; break;
        case LinkSpec::Kind::Empty: node.next = empty_id; break;
        case LinkSpec::Kind::None: break;
      }
      list.nodes.push_back(std::move(node));
    }
    if (needs_empty) list.nodes.push_back({});
    list.head = 0;
  }

  void check_strict() {
    std::set<CardName> seen;
    for (const auto& e : from_linked(doc_.start)) {
      if (!seen.insert(e.card).second) {
        throw Error(ErrorCode::DuplicateStartCard, e.card.code() + " appears twice in the starting state");
      }
      if (!doc_.available.count(e.card)) {
        throw Error(ErrorCode::CardNotAvailable, e.card.code() + " is in the starting state but not available");
      }
    }
    for (const auto& c : doc_.unavailable) {
      if (doc_.available.count(c)) {
        throw Error(ErrorCode::CardNotAvailable, c.code() + " is both available and unavailable");
      }
    }
    if (doc_.expect) {
      for (const auto& [c, o] : doc_.expect->expected) {
        if (!doc_.available.count(c)) {
          throw Error(ErrorCode::CardNotAvailable, c.code() + " is asserted but not available");
        }
      }
    }
    auto d = diagnose(doc_.instructions);
    if (!d.cycle_nodes.empty()) {
      throw Error(ErrorCode::CyclicList, "step " + std::to_string(d.cycle_nodes.front() + 1) + " lies on a cycle");
    }
    if (!d.extra_heads.empty()) {
      throw Error(ErrorCode::MultipleHeads, "step " + std::to_string(d.extra_heads.front() + 1) +
                                                " is not reachable from step 1");
    }
    if (!d.content_terminals.empty()) {
      throw Error(ErrorCode::MalformedTerminal, "step " + std::to_string(d.content_terminals.front() + 1) +
                                                    " ends the list without an empty node");
    }
    for (const auto& ins : from_linked(doc_.instructions)) {
      const auto& c = action_class_of(t_, ins.action);
      if (!t_.is_card_action(c.id)) {
        throw Error(ErrorCode::UnknownAction, ins.action.id + " is not a Card Action");
      }
    }
  }
};

std::string step_line(std::size_t n, const Instruction& ins) {
  return "step " + std::to_string(n) + ": " + ins.action.id + " @" + format_location(ins.focus);
}

}  // namespace

MethodDoc parse_method(std::string_view src, const Taxonomy& t, ParseMode mode) {
  return MethodParser(t, mode).parse(src);
}

std::string serialize_method(const MethodDoc& doc) {
  std::string out = "method " + text::quote(doc.name) + "\n";
  if (doc.creator) out += "creator " + text::quote(*doc.creator) + "\n";
  out += "kind " + std::string(to_string(doc.kind)) + "\n";
  if (doc.visibility == Visibility::Private) out += "vis private\n";
  out += "available";
  for (const auto& c : doc.available) out += " " + c.code();
  out += "\n";
  if (!doc.unavailable.empty()) {
    out += "unavailable";
    for (const auto& c : doc.unavailable) out += " " + c.code();
    out += "\n";
  }
  out += "start top-down:";
  bool first = true;
  for (const auto& node : doc.start.nodes) {
    if (!node.content) continue;
    out += first ? " " : " | ";
    out += node.content->card.code() + " " + std::string(to_string(node.content->orientation));
    first = false;
  }
  out += "\n";

  const auto& list = doc.instructions;
  if (diagnose(list).clean()) {
    std::size_t n = 0;
    for (auto id : chain_of(list)) {
      if (list.nodes[id].content) out += step_line(++n, *list.nodes[id].content) + "\n";
    }
  } else {
    // Keep the broken shape visible with explicit links, numbering content
    // nodes in arena order.
    std::vector<std::size_t> step_of(list.nodes.size(), 0);
    std::size_t n = 0;
    for (std::size_t i = 0; i < list.nodes.size(); ++i) {
      if (list.nodes[i].content) step_of[i] = ++n;
    }
    for (std::size_t i = 0; i < list.nodes.size(); ++i) {
      const auto& node = list.nodes[i];
      if (!node.content) continue;
      out += step_line(step_of[i], *node.content);
      if (!node.next) {
        out += " -> none";
      } else if (*node.next >= list.nodes.size() || !list.nodes[*node.next].content) {
        out += " -> empty";
      } else {
        out += " -> step " + std::to_string(step_of[*node.next]);
      }
      out += "\n";
    }
  }

  if (doc.expect) {
    out += "expect:";
    bool first_e = true;
    for (const auto& [c, o] : doc.expect->expected) {
      out += first_e ? " " : ", ";
      out += c.code() + " " + std::string(to_string(o));
      first_e = false;
    }
    out += "\n";
  }
  out += "end\n";
  return out;
}

}  // namespace ocs
