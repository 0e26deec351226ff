#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ocs/individuals.hpp"
#include "ocs/method.hpp"
#include "ocs/name_index.hpp"
#include "ocs/taxonomy.hpp"
#include "ocs/validator.hpp"

namespace ocs {

/// Everything read from a data directory before any judgement: methods are
/// parsed leniently so that the validator can see broken ones.
struct Corpus {
  std::filesystem::path directory;
  std::string taxonomy_file;
  Taxonomy taxonomy;
  std::vector<std::pair<std::string, MethodDoc>> methods;  // file name, document; sorted by file name
  std::vector<std::string> individual_files;
  IndividualGraph individuals;

  std::vector<MethodDoc> documents() const;
};

/// Reads one `*.tax`, any number of `*.method` and `*.ind` files. Errors
/// keep their code and gain the file name. Throws Io, EmptyCatalog,
/// CatalogInvalid (no or several taxonomy files), and the parser errors.
Corpus load_corpus(const std::filesystem::path& dir);

/// check_all over a corpus, with each violation's detail prefixed by the
/// file it came from.
ValidationReport validate_corpus(const Corpus& c);

struct CatalogOptions {
  /// Drop private methods and classes from queries, lookups and exports.
  bool public_only = false;
};

class Catalog {
 public:
  /// Throws CatalogInvalid when the corpus has Error violations.
  static Catalog from_corpus(Corpus corpus, CatalogOptions options = {});

  const Taxonomy& taxonomy() const noexcept { return taxonomy_; }
  const NameIndex& index() const noexcept { return index_; }
  const CatalogOptions& options() const noexcept { return options_; }
  const std::map<std::string, MethodDoc, std::less<>>& methods() const noexcept { return methods_; }

  const MethodDoc* find_method(std::string_view id) const;
  /// Null for unknown classes and, in public mode, private ones.
  const ActionClass* find_action(std::string_view id) const;

 private:
  Taxonomy taxonomy_;
  NameIndex index_;
  CatalogOptions options_;
  std::map<std::string, MethodDoc, std::less<>> methods_;
};

Catalog load_catalog(const std::filesystem::path& dir, CatalogOptions options = {});

struct MethodQuery {
  std::optional<std::size_t> max_cards;
  std::optional<std::size_t> max_sleights;
  std::optional<std::string> uses_action;  // class id; descendants count
};

/// Distinct classes below Card Sleight that the method performs.
std::set<std::string> sleight_classes_used(const Taxonomy& t, const MethodDoc& doc);

/// Matching method ids, sorted. Throws UnknownAction for an unknown
/// `uses_action`.
std::vector<std::string> query_methods(const Catalog& c, const MethodQuery& q);

inline constexpr std::string_view kCardSleightClass = "card_sleight";

}  // namespace ocs
