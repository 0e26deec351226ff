#include "ocs/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ocs/error.hpp"

namespace ocs {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class F>
auto annotated(const std::string& file, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.code(), file + ": " + e.what());
  }
}

}  // namespace

std::vector<MethodDoc> Corpus::documents() const {
  std::vector<MethodDoc> out;
  for (const auto& [file, doc] : methods) out.push_back(doc);
  return out;
}

Corpus load_corpus(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::Io, dir.string() + " is not a directory");
  std::vector<fs::path> tax, methods, inds;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const auto ext = e.path().extension().string();
    if (ext == ".tax") tax.push_back(e.path());
    if (ext == ".method") methods.push_back(e.path());
    if (ext == ".ind") inds.push_back(e.path());
  }
  if (tax.empty() && methods.empty() && inds.empty()) {
    throw Error(ErrorCode::EmptyCatalog, dir.string() + " holds no taxonomy, method or individual files");
  }
  if (tax.size() != 1) {
    throw Error(ErrorCode::CatalogInvalid,
                dir.string() + " must hold exactly one .tax file, found " + std::to_string(tax.size()));
  }
  std::sort(methods.begin(), methods.end());
  std::sort(inds.begin(), inds.end());

  Corpus c;
  c.directory = dir;
  c.taxonomy_file = tax.front().filename().string();
  c.taxonomy = annotated(c.taxonomy_file, [&] { return load_taxonomy(read_file(tax.front())); });
  for (const auto& p : methods) {
    auto name = p.filename().string();
    auto doc = annotated(name, [&] { return parse_method(read_file(p), c.taxonomy, ParseMode::Lenient); });
    c.methods.emplace_back(name, std::move(doc));
  }
  for (const auto& p : inds) {
    auto name = p.filename().string();
    annotated(name, [&] {
      merge_into(c.individuals, parse_individuals(read_file(p)));
      return 0;
    });
    c.individual_files.push_back(name);
  }
  return c;
}

ValidationReport validate_corpus(const Corpus& c) {
  auto docs = c.documents();
  auto report = annotated(c.individual_files.empty() ? c.taxonomy_file : c.individual_files.front(),
                          [&] { return check_all(c.taxonomy, docs, c.individuals); });
  // Attribute each violation to its source file by re-running the per-part checks.
  std::map<Violation, std::string, decltype(&violation_less)> origin(&violation_less);
  for (const auto& [file, doc] : c.methods) {
    for (const auto& v : check_method(doc, c.taxonomy)) origin.emplace(v, file);
  }
  std::string ind_files;
  for (const auto& f : c.individual_files) ind_files += (ind_files.empty() ? "" : ",") + f;
  if (!c.individuals.empty()) {
    for (const auto& v : check_individuals(c.taxonomy, c.individuals)) origin.emplace(v, ind_files);
  }
  for (auto& v : report.violations) {
    auto it = origin.find(v);
    v.detail = (it != origin.end() ? it->second : c.taxonomy_file) + ": " + v.detail;
  }
  return report;
}

Catalog Catalog::from_corpus(Corpus corpus, CatalogOptions options) {
  auto report = validate_corpus(corpus);
  if (!report.consistent) {
    std::string msg = corpus.directory.string() + " is not consistent:";
    for (const auto& v : report.violations) {
      if (v.severity == Severity::Error) msg += "\n  " + format_violation(v);
    }
    throw Error(ErrorCode::CatalogInvalid, msg);
  }
  Catalog cat;
  cat.options_ = options;
  for (auto& [file, doc] : corpus.methods) {
    if (options.public_only && doc.visibility == Visibility::Private) continue;
    auto id = doc.id();
    if (!cat.methods_.emplace(id, std::move(doc)).second) {
      throw Error(ErrorCode::CatalogInvalid, file + ": method id " + id + " is used twice");
    }
  }
  cat.index_ = build_index(corpus.taxonomy, options.public_only);
  cat.taxonomy_ = std::move(corpus.taxonomy);
  return cat;
}

const MethodDoc* Catalog::find_method(std::string_view id) const {
  auto it = methods_.find(id);
  return it == methods_.end() ? nullptr : &it->second;
}

const ActionClass* Catalog::find_action(std::string_view id) const {
  const auto* c = taxonomy_.find_class(id);
  if (c && options_.public_only && c->visibility == Visibility::Private) return nullptr;
  return c;
}

Catalog load_catalog(const fs::path& dir, CatalogOptions options) {
  return Catalog::from_corpus(load_corpus(dir), options);
}

std::set<std::string> sleight_classes_used(const Taxonomy& t, const MethodDoc& doc) {
  std::set<std::string> out;
  for (const auto& ins : doc.steps()) {
    const auto& c = action_class_of(t, ins.action);
    if (c.id != kCardSleightClass && t.descends_from(c.id, kCardSleightClass)) out.insert(c.id);
  }
  return out;
}

std::vector<std::string> query_methods(const Catalog& c, const MethodQuery& q) {
  const auto& t = c.taxonomy();
  if (q.uses_action && !c.find_action(*q.uses_action)) {
    throw Error(ErrorCode::UnknownAction, "no action class " + *q.uses_action);
  }
  std::vector<std::string> out;
  for (const auto& [id, doc] : c.methods()) {
    if (q.max_cards && doc.available.size() > *q.max_cards) continue;
    if (q.max_sleights && sleight_classes_used(t, doc).size() > *q.max_sleights) continue;
    if (q.uses_action) {
      bool uses = false;
      for (const auto& ins : doc.steps()) {
        uses = uses || t.descends_from(action_class_of(t, ins.action).id, *q.uses_action);
      }
      if (!uses) continue;
    }
    out.push_back(id);
  }
  return out;
}

}  // namespace ocs
