#include "ocs/taxonomy.hpp"

#include <algorithm>
#include <charconv>

#include "ocs/error.hpp"
#include "ocs/text.hpp"

namespace ocs {

std::string_view to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::Sleight: return "sleight";
    case ActionKind::Straight: return "straight";
    case ActionKind::Abstract: return "abstract";
  }
  return "abstract";
}

std::string_view to_string(Visibility vis) { return vis == Visibility::Public ? "public" : "private"; }

std::string_view to_string(StraightOp op) {
  switch (op) {
    case StraightOp::Spread: return "spread";
    case StraightOp::Square: return "square";
    case StraightOp::Fan: return "fan";
    case StraightOp::FlipCard: return "flip-card";
    case StraightOp::FlipPacket: return "flip-packet";
    case StraightOp::CrimpAdd: return "crimp-add";
    case StraightOp::CrimpRemove: return "crimp-remove";
    case StraightOp::CutToQuality: return "cut-to-crimp";
    case StraightOp::Cut: return "cut";
    case StraightOp::Identity: return "identity";
  }
  return "identity";
}

std::optional<StraightOp> parse_straight_op(std::string_view s) {
  for (auto op : {StraightOp::Spread, StraightOp::Square, StraightOp::Fan, StraightOp::FlipCard,
                  StraightOp::FlipPacket, StraightOp::CrimpAdd, StraightOp::CrimpRemove,
                  StraightOp::CutToQuality, StraightOp::Cut, StraightOp::Identity}) {
    if (to_string(op) == s) return op;
  }
  return std::nullopt;
}

namespace {

bool takes_site(StraightOp op) { return op == StraightOp::CrimpAdd || op == StraightOp::CrimpRemove; }

ActionClass make_builtin(std::string_view id, std::string_view name, std::string_view parent) {
  ActionClass c;
  c.id = std::string(id);
  c.primary_name = std::string(name);
  c.parent = std::string(parent);
  c.kind = ActionKind::Abstract;
  c.builtin = true;
  return c;
}

}  // namespace

Taxonomy Taxonomy::build(std::vector<ActionClass> classes, std::vector<SleightVariant> variants) {
  Taxonomy t;
  for (auto c : {make_builtin(builtin::kProcess, "process", ""),
                 make_builtin(builtin::kCardAction, "Card Action", builtin::kProcess),
                 make_builtin(builtin::kQuality, "quality", ""),
                 make_builtin(builtin::kInformationContentEntity, "information content entity", "")}) {
    t.classes_.emplace(c.id, std::move(c));
  }

  std::map<std::string, std::string> names;  // lower-cased primary name -> id
  for (const auto& [id, c] : t.classes_) names.emplace(text::to_lower(c.primary_name), id);

  for (auto& c : classes) {
    if (c.primary_name.empty()) {
      throw Error(ErrorCode::InvariantViolation, "class " + c.id + " has no primary name");
    }
    auto key = text::to_lower(c.primary_name);
    if (auto it = names.find(key); it != names.end()) {
      throw Error(ErrorCode::DuplicatePrimaryName,
                  "\"" + c.primary_name + "\" is the primary name of both " + it->second + " and " + c.id);
    }
    names.emplace(key, c.id);
    auto id = c.id;
    if (!t.classes_.emplace(id, std::move(c)).second) throw Error(ErrorCode::DuplicateId, "class " + id);
  }

  for (const auto& [id, c] : t.classes_) {
    if (c.builtin && c.parent.empty()) continue;
    if (!t.classes_.count(c.parent)) {
      throw Error(ErrorCode::UnknownParent, "class " + id + " has unknown parent " + c.parent);
    }
    // Every chain must end at a parentless built-in within |classes| steps.
    std::string_view cur = id;
    for (std::size_t steps = 0;; ++steps) {
      const auto& node = t.classes_.find(cur)->second;
      if (node.parent.empty()) break;
      if (steps > t.classes_.size()) {
        throw Error(ErrorCode::CyclicParent, "class " + id + " is its own ancestor");
      }
      cur = node.parent;
    }
  }

  for (auto& v : variants) {
    if (t.classes_.count(v.id)) throw Error(ErrorCode::DuplicateId, "variant " + v.id + " reuses a class id");
    if (!t.classes_.count(v.class_id)) {
      throw Error(ErrorCode::UnknownId, "variant " + v.id + " belongs to unknown class " + v.class_id);
    }
    if (v.transform.perm.size() != v.participants) {
      throw Error(ErrorCode::SizeMismatch, "variant " + v.id + " has " + std::to_string(v.participants) +
                                               " participants but a permutation of " +
                                               std::to_string(v.transform.perm.size()));
    }
    for (auto f : v.transform.flips) {
      if (f < 1 || f > v.participants) {
        throw Error(ErrorCode::OutOfRange, "variant " + v.id + " flips position " + std::to_string(f));
      }
    }
    auto id = v.id;
    if (!t.variants_.emplace(id, std::move(v)).second) throw Error(ErrorCode::DuplicateId, "variant " + id);
  }
  return t;
}

const ActionClass* Taxonomy::find_class(std::string_view id) const {
  auto it = classes_.find(id);
  return it == classes_.end() ? nullptr : &it->second;
}

const SleightVariant* Taxonomy::find_variant(std::string_view id) const {
  auto it = variants_.find(id);
  return it == variants_.end() ? nullptr : &it->second;
}

const ActionClass& Taxonomy::get_class(std::string_view id) const {
  if (auto* c = find_class(id)) return *c;
  throw Error(ErrorCode::UnknownId, "no class " + std::string(id));
}

const SleightVariant& Taxonomy::get_variant(std::string_view id) const {
  if (auto* v = find_variant(id)) return *v;
  throw Error(ErrorCode::UnknownId, "no variant " + std::string(id));
}

std::vector<const SleightVariant*> Taxonomy::variants_of(std::string_view class_id) const {
  std::vector<const SleightVariant*> out;
  for (const auto& [id, v] : variants_) {
    if (v.class_id == class_id) out.push_back(&v);
  }
  return out;
}

std::vector<const ActionClass*> Taxonomy::children_of(std::string_view class_id) const {
  std::vector<const ActionClass*> out;
  for (const auto& [id, c] : classes_) {
    if (c.parent == class_id) out.push_back(&c);
  }
  return out;
}

bool Taxonomy::descends_from(std::string_view id, std::string_view ancestor) const {
  const ActionClass* c = find_class(id);
  while (c) {
    if (c->id == ancestor) return true;
    if (c->parent.empty()) return false;
    c = find_class(c->parent);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

using text::Token;

std::optional<std::string_view> key_value(const Token& tok, std::string_view key) {
  if (tok.quoted) return std::nullopt;
  std::string_view v = tok.value;
  if (v.size() <= key.size() || v.substr(0, key.size()) != key || v[key.size()] != '=') return std::nullopt;
  return v.substr(key.size() + 1);
}

std::size_t parse_count(std::string_view s, std::size_t line, std::size_t col) {
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError(line, col, "expected a number, got '" + std::string(s) + "'");
  }
  return n;
}

std::vector<std::size_t> parse_index_list(std::string_view s, std::size_t line, std::size_t col) {
  std::vector<std::size_t> out;
  for (auto part : text::split(s, ',')) out.push_back(parse_count(part, line, col));
  return out;
}

struct TaxonomyParser {
  std::vector<ActionClass> classes;
  std::vector<SleightVariant> variants;
  std::vector<std::size_t> class_lines;
  enum class Context { None, Class, Variant } context = Context::None;
  std::set<std::string> seen_keys;

  void parse(std::string_view src) {
    std::size_t line_no = 0;
    for (auto line : text::lines(src)) {
      ++line_no;
      auto toks = text::tokenize(line, line_no);
      if (toks.empty()) continue;
      const auto& head = toks[0];
      if (head.quoted) throw ParseError(line_no, head.column, "expected a keyword");
      if (head.value == "class") {
        parse_class(toks, line_no);
      } else if (head.value == "variant") {
        parse_variant(toks, line_no);
      } else if (context == Context::Class) {
        parse_class_detail(toks, line_no);
      } else if (context == Context::Variant) {
        parse_variant_detail(toks, line_no);
      } else {
        throw ParseError(line_no, head.column, "unknown key '" + head.value + "'");
      }
    }
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (classes[i].primary_name.empty()) {
        throw ParseError(class_lines[i], 0, "class " + classes[i].id + " has no name line");
      }
    }
  }

  static const std::string& quoted_arg(const std::vector<Token>& toks, std::size_t i, std::size_t line_no) {
    if (toks.size() != i + 1 || !toks[i].quoted) {
      throw ParseError(line_no, toks[0].column, "'" + toks[0].value + "' takes one quoted string");
    }
    return toks[i].value;
  }

  void once(const std::string& key, const Token& tok, std::size_t line_no) {
    if (!seen_keys.insert(key).second) throw ParseError(line_no, tok.column, "duplicate '" + key + "'");
  }

  void parse_class(const std::vector<Token>& toks, std::size_t line_no) {
    // class <id> : <parent> kind=<k> vis=<v>
    std::vector<Token> t(toks.begin() + 1, toks.end());
    // accept "id:" and "id :"
    if (!t.empty() && !t[0].quoted && t[0].value.size() > 1 && t[0].value.back() == ':') {
      t[0].value.pop_back();
      t.insert(t.begin() + 1, Token{":", false, t[0].column});
    }
    if (t.size() != 5 || t[1].value != ":") {
      throw ParseError(line_no, toks[0].column, "expected 'class <id> : <parent> kind=<k> vis=<v>'");
    }
    ActionClass c;
    c.id = t[0].value;
    c.parent = t[2].value;
    auto kind = key_value(t[3], "kind");
    auto vis = key_value(t[4], "vis");
    if (!kind) throw ParseError(line_no, t[3].column, "expected kind=<sleight|straight|abstract>");
    if (!vis) throw ParseError(line_no, t[4].column, "expected vis=<public|private>");
    if (*kind == "sleight") {
      c.kind = ActionKind::Sleight;
    } else if (*kind == "straight") {
      c.kind = ActionKind::Straight;
    } else if (*kind == "abstract") {
      c.kind = ActionKind::Abstract;
    } else {
      throw ParseError(line_no, t[3].column, "unknown kind '" + std::string(*kind) + "'");
    }
    if (*vis == "public") {
      c.visibility = Visibility::Public;
    } else if (*vis == "private") {
      c.visibility = Visibility::Private;
    } else {
      throw ParseError(line_no, t[4].column, "unknown visibility '" + std::string(*vis) + "'");
    }
    classes.push_back(std::move(c));
    class_lines.push_back(line_no);
    context = Context::Class;
    seen_keys.clear();
  }

  void parse_class_detail(const std::vector<Token>& toks, std::size_t line_no) {
    auto& c = classes.back();
    const auto& key = toks[0].value;
    if (key == "name") {
      once(key, toks[0], line_no);
      c.primary_name = quoted_arg(toks, 1, line_no);
    } else if (key == "alt") {
      c.alt_names.push_back(quoted_arg(toks, 1, line_no));
    } else if (key == "def") {
      once(key, toks[0], line_no);
      c.metadata.definition = quoted_arg(toks, 1, line_no);
    } else if (key == "src") {
      once(key, toks[0], line_no);
      c.metadata.definition_source = quoted_arg(toks, 1, line_no);
    } else if (key == "eluc") {
      once(key, toks[0], line_no);
      c.metadata.elucidation = quoted_arg(toks, 1, line_no);
    } else if (key == "link") {
      if (toks.size() < 2 || toks[1].quoted) throw ParseError(line_no, toks[0].column, "expected 'link archive|credits \"<url>\"'");
      const auto& which = toks[1].value;
      if (which == "archive") {
        once("link archive", toks[1], line_no);
        c.metadata.archive_link = quoted_arg(toks, 2, line_no);
      } else if (which == "credits") {
        once("link credits", toks[1], line_no);
        c.metadata.credits_link = quoted_arg(toks, 2, line_no);
      } else {
        throw ParseError(line_no, toks[1].column, "unknown link kind '" + which + "'");
      }
    } else if (key == "op") {
      once(key, toks[0], line_no);
      if (toks.size() < 2 || toks.size() > 3) throw ParseError(line_no, toks[0].column, "expected 'op <operation> [site]'");
      auto op = parse_straight_op(toks[1].value);
      if (!op) throw ParseError(line_no, toks[1].column, "unknown operation '" + toks[1].value + "'");
      StraightBinding b{*op, QualitySite::WholeCard};
      if (takes_site(*op)) {
        if (toks.size() != 3) throw ParseError(line_no, toks[1].column, "crimp operations need a site");
        auto site = parse_quality_site(toks[2].value);
        if (!site) throw ParseError(line_no, toks[2].column, "unknown site '" + toks[2].value + "'");
        b.site = *site;
      } else if (toks.size() == 3) {
        throw ParseError(line_no, toks[2].column, "operation takes no site");
      }
      c.binding = b;
    } else {
      throw ParseError(line_no, toks[0].column, "unknown key '" + key + "'");
    }
  }

  void parse_variant(const std::vector<Token>& toks, std::size_t line_no) {
    // variant <id> of <class-id> participants=<N> perm=<...> flips=<...|none> [vis=<v>]
    if ((toks.size() != 7 && toks.size() != 8) || toks[2].value != "of") {
      throw ParseError(line_no, toks[0].column,
                       "expected 'variant <id> of <class> participants=N perm=... flips=...'");
    }
    SleightVariant v;
    v.id = toks[1].value;
    v.class_id = toks[3].value;
    auto n = key_value(toks[4], "participants");
    auto perm = key_value(toks[5], "perm");
    auto flips = key_value(toks[6], "flips");
    if (!n) throw ParseError(line_no, toks[4].column, "expected participants=<N>");
    if (!perm) throw ParseError(line_no, toks[5].column, "expected perm=<p1,...,pN>");
    if (!flips) throw ParseError(line_no, toks[6].column, "expected flips=<i,j,...|none>");
    v.participants = parse_count(*n, line_no, toks[4].column);
    auto images = parse_index_list(*perm, line_no, toks[5].column);
    if (!is_bijection(images)) throw ParseError(line_no, toks[5].column, "perm is not a bijection on 1..N");
    v.transform.perm = Permutation(std::move(images));
    if (*flips != "none") {
      for (auto f : parse_index_list(*flips, line_no, toks[6].column)) {
        if (!v.transform.flips.insert(f).second) throw ParseError(line_no, toks[6].column, "flip listed twice");
      }
    }
    if (toks.size() == 8) {
      auto vis = key_value(toks[7], "vis");
      if (vis && *vis == "public") {
        v.visibility = Visibility::Public;
      } else if (vis && *vis == "private") {
        v.visibility = Visibility::Private;
      } else {
        throw ParseError(line_no, toks[7].column, "expected vis=<public|private>");
      }
    }
    variants.push_back(std::move(v));
    context = Context::Variant;
    seen_keys.clear();
  }

  void parse_variant_detail(const std::vector<Token>& toks, std::size_t line_no) {
    auto& v = variants.back();
    const auto& key = toks[0].value;
    if (key == "name") {
      once(key, toks[0], line_no);
      v.name = quoted_arg(toks, 1, line_no);
    } else if (key == "start") {
      once(key, toks[0], line_no);
      v.start_state_note = quoted_arg(toks, 1, line_no);
    } else if (key == "end") {
      once(key, toks[0], line_no);
      v.end_state_note = quoted_arg(toks, 1, line_no);
    } else {
      throw ParseError(line_no, toks[0].column, "unknown key '" + key + "'");
    }
  }
};

}  // namespace

Taxonomy load_taxonomy(std::string_view src) {
  TaxonomyParser p;
  p.parse(src);
  return Taxonomy::build(std::move(p.classes), std::move(p.variants));
}

std::string serialize_taxonomy(const Taxonomy& t) {
  std::string out;
  for (const auto& [id, c] : t.classes()) {
    if (c.builtin) continue;
    out += "class " + c.id + " : " + c.parent + " kind=" + std::string(to_string(c.kind)) +
           " vis=" + std::string(to_string(c.visibility)) + "\n";
    out += "  name " + text::quote(c.primary_name) + "\n";
    for (const auto& a : c.alt_names) out += "  alt " + text::quote(a) + "\n";
    if (!c.metadata.definition.empty()) out += "  def " + text::quote(c.metadata.definition) + "\n";
    if (c.metadata.definition_source) out += "  src " + text::quote(*c.metadata.definition_source) + "\n";
    if (c.metadata.archive_link) out += "  link archive " + text::quote(*c.metadata.archive_link) + "\n";
    if (c.metadata.credits_link) out += "  link credits " + text::quote(*c.metadata.credits_link) + "\n";
    if (c.metadata.elucidation) out += "  eluc " + text::quote(*c.metadata.elucidation) + "\n";
    if (c.binding) {
      out += "  op " + std::string(to_string(c.binding->op));
      if (takes_site(c.binding->op)) out += " " + std::string(to_string(c.binding->site));
      out += "\n";
    }
  }
  for (const auto& [id, v] : t.variants()) {
    out += "variant " + v.id + " of " + v.class_id + " participants=" + std::to_string(v.participants) +
           " perm=" + v.transform.perm.to_string() + " flips=";
    if (v.transform.flips.empty()) {
      out += "none";
    } else {
      bool first = true;
      for (auto f : v.transform.flips) {
        if (!first) out += ',';
        out += std::to_string(f);
        first = false;
      }
    }
    if (v.visibility == Visibility::Private) out += " vis=private";
    out += "\n";
    if (v.name) out += "  name " + text::quote(*v.name) + "\n";
    if (v.start_state_note) out += "  start " + text::quote(*v.start_state_note) + "\n";
    if (v.end_state_note) out += "  end " + text::quote(*v.end_state_note) + "\n";
  }
  return out;
}

std::size_t depth(const Taxonomy& t, std::string_view id) {
  const auto* c = &t.get_class(id);
  if (!t.is_card_action(id)) {
    throw Error(ErrorCode::NotUnderCardAction, std::string(id) + " is not a Card Action");
  }
  std::size_t d = 0;
  while (c->id != builtin::kCardAction) {
    c = &t.get_class(c->parent);
    ++d;
  }
  return d;
}

std::vector<const ActionClass*> lookup(const Taxonomy& t, std::string_view name) {
  std::vector<const ActionClass*> primary;
  std::vector<const ActionClass*> alternative;
  for (const auto& [id, c] : t.classes()) {
    if (text::iequals(c.primary_name, name)) {
      primary.push_back(&c);
      continue;
    }
    for (const auto& a : c.alt_names) {
      if (text::iequals(a, name)) {
        alternative.push_back(&c);
        break;
      }
    }
  }
  primary.insert(primary.end(), alternative.begin(), alternative.end());
  return primary;
}

SleightTransform variant_transform(const Taxonomy& t, std::string_view variant_id) {
  return t.get_variant(variant_id).transform;
}

std::vector<Violation> validate_taxonomy(const Taxonomy& t) {
  std::vector<Violation> out;
  for (const auto& [id, c] : t.classes()) {
    if (c.builtin) continue;
    if (t.is_card_action(id)) {
      auto d = depth(t, id);
      if (d > kMaxActionDepth) {
        out.push_back({RuleId::DepthBound, id, Severity::Error,
                       "depth " + std::to_string(d) + " from Card Action exceeds " + std::to_string(kMaxActionDepth)});
      }
      if (c.kind == ActionKind::Sleight && t.variants_of(id).empty()) {
        out.push_back({RuleId::CoherenceEmptyClass, id, Severity::Warning,
                       "sleight class has no variants, so it cannot be populated"});
      }
    } else if (c.kind != ActionKind::Abstract || c.binding) {
      out.push_back({RuleId::OnlyRange, id, Severity::Error,
                     "only Card Action classes may be sleights, straight actions, or carry an op"});
    }
  }
  for (const auto& [id, v] : t.variants()) {
    if (!t.is_card_action(v.class_id)) {
      out.push_back({RuleId::OnlyRange, id, Severity::Error,
                     "variant of " + v.class_id + ", which is not a Card Action"});
    }
  }
  sort_violations(out);
  return out;
}

}  // namespace ocs
