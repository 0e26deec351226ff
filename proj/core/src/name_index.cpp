#include "ocs/name_index.hpp"

#include <algorithm>
#include <set>

#include "ocs/error.hpp"
#include "ocs/text.hpp"

namespace ocs {

std::string canonical_form(std::string_view name, const std::vector<std::string>& stoplist) {
  std::string s = text::to_lower(name);
  for (const auto& phrase : stoplist) {
    const auto p = text::to_lower(phrase);
    if (p.empty()) continue;
    for (auto at = s.find(p); at != std::string::npos; at = s.find(p, at)) s.erase(at, p.size());
  }
  std::string out;
  bool space = false;
  for (char c : s) {
    if (c == ' ' || c == '\t') {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

NameIndex NameIndex::build(std::vector<NamedClass> names, std::vector<NamedClass> alt_names,
                           NameIndexOptions options) {
  if (names.empty()) throw Error(ErrorCode::EmptyNameSet, "no names to index");
  NameIndex idx;
  idx.options_ = std::move(options);
  std::sort(names.begin(), names.end(), [](const auto& a, const auto& b) { return a.class_id < b.class_id; });
  for (auto& n : names) {
    auto c = canonical_form(n.name, idx.options_.stoplist);
    if (c.size() < idx.options_.min_length) {
      throw Error(ErrorCode::NameTooShort, "\"" + n.name + "\" (" + n.class_id + ") searches as \"" + c +
                                               "\", shorter than " + std::to_string(idx.options_.min_length));
    }
    idx.primaries_.push_back({std::move(n.class_id), std::move(n.name), std::move(c)});
  }
  const auto L = idx.options_.min_length;
  for (std::size_t i = 0; i < idx.primaries_.size(); ++i) {
    const auto& c = idx.primaries_[i].canonical;
    std::set<std::string_view> seen;
    for (std::size_t at = 0; at + L <= c.size(); ++at) {
      auto g = std::string_view(c).substr(at, L);
      if (seen.insert(g).second) idx.grams_[std::string(g)].push_back(i);
    }
  }
  std::map<std::string, Alt> by_canonical;
  for (auto& a : alt_names) {
    auto c = canonical_form(a.name, idx.options_.stoplist);
    if (c.empty()) continue;
    auto& slot = by_canonical[c];
    if (slot.label.empty()) {
      slot.label = a.name;
      slot.canonical = c;
    }
    if (std::find(slot.class_ids.begin(), slot.class_ids.end(), a.class_id) == slot.class_ids.end()) {
      slot.class_ids.push_back(a.class_id);
    }
  }
  for (auto& [c, alt] : by_canonical) {
    std::sort(alt.class_ids.begin(), alt.class_ids.end());
    idx.alts_.push_back(std::move(alt));
  }
  return idx;
}

std::vector<std::string> NameIndex::canonical_names() const {
  std::vector<std::string> out;
  for (const auto& p : primaries_) out.push_back(p.canonical);
  return out;
}

std::vector<SubstringViolation> NameIndex::check_substring_free() const {
  std::vector<SubstringViolation> out;
  for (const auto& [gram, holders] : grams_) {
    if (holders.size() <= options_.bound) continue;
    SubstringViolation v{gram, {}};
    for (auto i : holders) v.names.push_back(primaries_[i].label);
    std::sort(v.names.begin(), v.names.end());
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Candidate> NameIndex::matches(std::string_view q) const {
  struct Keyed {
    std::string key;
    Candidate c;
  };
  std::vector<Keyed> hits;
  std::set<std::string> via_primary;
  if (q.size() >= options_.min_length) {
    // A query at least one gram long can only match names holding its first gram.
    auto it = grams_.find(q.substr(0, options_.min_length));
    if (it != grams_.end()) {
      for (auto i : it->second) {
        const auto& p = primaries_[i];
        if (p.canonical.find(q) != std::string::npos) {
          hits.push_back({p.canonical, {p.label, {p.class_id}, false}});
          via_primary.insert(p.class_id);
        }
      }
    }
  } else {
    for (const auto& p : primaries_) {
      if (p.canonical.find(q) != std::string::npos) {
        hits.push_back({p.canonical, {p.label, {p.class_id}, false}});
        via_primary.insert(p.class_id);
      }
    }
  }
  for (const auto& a : alts_) {
    if (a.canonical.find(q) == std::string::npos) continue;
    bool all_covered = std::all_of(a.class_ids.begin(), a.class_ids.end(),
                                   [&](const auto& id) { return via_primary.count(id) > 0; });
    if (!all_covered) hits.push_back({a.canonical, {a.label, a.class_ids, true}});
  }
  std::sort(hits.begin(), hits.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.key, a.c.alt, a.c.class_ids) < std::tie(b.key, b.c.alt, b.c.class_ids);
  });
  std::vector<Candidate> out;
  out.reserve(hits.size());
  for (auto& h : hits) out.push_back(std::move(h.c));
  return out;
}

namespace {

// Case-folded with whitespace runs collapsed, but a leading or trailing
// space is kept: " card" narrows the search more than "card".
std::string query_form(std::string_view query) {
  std::string out;
  for (char c : text::to_lower(query)) {
    if (c == '\t') c = ' ';
    if (c == ' ' && !out.empty() && out.back() == ' ') continue;
    out += c;
  }
  return out;
}

}  // namespace

Completion NameIndex::autocomplete(std::string_view query) const {
  Completion out;
  auto q = query_form(query);
  if (text::trim(q).empty()) return out;
  auto all = matches(q);
  if (all.size() > options_.bound) {
    out.overflow = true;
    all.resize(options_.bound);
  }
  out.candidates = std::move(all);
  return out;
}

GestureDistance NameIndex::gesture_distance(std::string_view class_id) const {
  std::vector<std::string> forms;
  for (const auto& p : primaries_) {
    if (p.class_id == class_id) forms.push_back(p.canonical);
  }
  if (forms.empty()) throw Error(ErrorCode::UnknownId, "no indexed class " + std::string(class_id));
  for (const auto& a : alts_) {
    if (std::find(a.class_ids.begin(), a.class_ids.end(), class_id) != a.class_ids.end()) forms.push_back(a.canonical);
  }
  const std::size_t longest = std::max_element(forms.begin(), forms.end(), [](const auto& a, const auto& b) {
                                return a.size() < b.size();
                              })->size();
  for (std::size_t len = 1; len <= longest; ++len) {
    std::optional<GestureDistance> best;
    std::set<std::string> tried;
    for (const auto& f : forms) {
      for (std::size_t at = 0; at + len <= f.size(); ++at) {
        auto q = f.substr(at, len);
        if (q.front() == ' ' || q.back() == ' ' || !tried.insert(q).second) continue;
        auto found = matches(q);
        if (found.size() > options_.bound) continue;
        std::optional<std::size_t> clicks;
        for (const auto& c : found) {
          if (std::find(c.class_ids.begin(), c.class_ids.end(), class_id) == c.class_ids.end()) continue;
          std::size_t k = c.class_ids.size() > 1 ? 2 : 1;
          if (!clicks || k < *clicks) clicks = k;
        }
        if (clicks && (!best || *clicks < best->clicks || (*clicks == best->clicks && q < best->query))) {
          best = GestureDistance{len, *clicks, q};
        }
      }
    }
    if (best) return *best;
  }
  // Unreachable for a well-formed index: the full primary form always
  // matches its own class. Fall back to typing the whole name.
  return GestureDistance{forms.front().size(), 1, forms.front()};
}

NameIndex build_index(const Taxonomy& t, bool public_only, NameIndexOptions options) {
  std::vector<NamedClass> names, alts;
  for (const auto& [id, c] : t.classes()) {
    if (public_only && c.visibility == Visibility::Private) continue;
    names.push_back({id, c.primary_name});
    for (const auto& a : c.alt_names) alts.push_back({id, a});
  }
  return NameIndex::build(std::move(names), std::move(alts), std::move(options));
}

std::vector<Violation> check_names(const Taxonomy& t, NameIndexOptions options) {
  std::vector<Violation> out;
  std::vector<NamedClass> names, alts;
  for (const auto& [id, c] : t.classes()) {
    auto canon = canonical_form(c.primary_name, options.stoplist);
    if (canon.size() < options.min_length) {
      out.push_back({RuleId::NameSubstring, id, Severity::Error,
                     "primary name \"" + c.primary_name + "\" searches as \"" + canon + "\", shorter than " +
                         std::to_string(options.min_length)});
      continue;
    }
    names.push_back({id, c.primary_name});
    for (const auto& a : c.alt_names) alts.push_back({id, a});
  }
  if (names.empty()) return out;
  auto idx = NameIndex::build(std::move(names), std::move(alts), options);
  for (const auto& v : idx.check_substring_free()) {
    std::string detail = "held by " + std::to_string(v.names.size()) + " names:";
    for (const auto& n : v.names) detail += " \"" + n + "\"";
    out.push_back({RuleId::NameSubstring, "\"" + v.substring + "\"", Severity::Error, detail});
  }
  sort_violations(out);
  return out;
}

}  // namespace ocs
