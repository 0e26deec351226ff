#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ocs/taxonomy.hpp"

namespace ocs {

struct NamedClass {
  std::string class_id;
  std::string name;
};

struct NameIndexOptions {
  std::vector<std::string> stoplist{"(use of)"};
  std::size_t min_length = 5;  // L
  std::size_t bound = 5;       // K
};

/// Stoplist phrases removed (case-insensitive), case-folded, whitespace
/// collapsed and trimmed: "Crimp (use of)" -> "crimp".
std::string canonical_form(std::string_view name, const std::vector<std::string>& stoplist);

struct SubstringViolation {
  std::string substring;            // always min_length long
  std::vector<std::string> names;   // primary names containing it, sorted

  friend bool operator==(const SubstringViolation&, const SubstringViolation&) = default;
};

struct Candidate {
  std::string label;                    // name as written in the taxonomy
  std::vector<std::string> class_ids;   // more than one only for a shared alternative name
  bool alt = false;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct Completion {
  std::vector<Candidate> candidates;  // at most K, sorted by canonical label
  bool overflow = false;              // more than K matched
};

struct GestureDistance {
  std::size_t keystrokes = 0;
  std::size_t clicks = 0;
  std::string query;  // a shortest query achieving it

  friend bool operator==(const GestureDistance&, const GestureDistance&) = default;
};

class NameIndex {
 public:
  /// Throws EmptyNameSet, NameTooShort (naming the first offending class).
  static NameIndex build(std::vector<NamedClass> names, std::vector<NamedClass> alt_names,
                         NameIndexOptions options = {});

  const NameIndexOptions& options() const noexcept { return options_; }
  std::size_t size() const noexcept { return primaries_.size(); }

  /// Canonical forms of the primary names, in class-id order.
  std::vector<std::string> canonical_names() const;

  /// Every min_length substring held by more than `bound` primary names.
  std::vector<SubstringViolation> check_substring_free() const;

  /// Substring search over canonical names. The query is case-folded and its
  /// whitespace runs collapsed; edge spaces are kept.
  Completion autocomplete(std::string_view query) const;

  /// Throws UnknownId.
  GestureDistance gesture_distance(std::string_view class_id) const;

 private:
  struct Form {
    std::string class_id;
    std::string label;
    std::string canonical;
  };
  struct Alt {
    std::string label;
    std::string canonical;
    std::vector<std::string> class_ids;
  };

  std::vector<Candidate> matches(std::string_view canonical_query) const;

  NameIndexOptions options_;
  std::vector<Form> primaries_;
  std::vector<Alt> alts_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> grams_;  // min_length gram -> primaries
};

/// All classes, primary and alternative names as search entries. With
/// `public_only`, private classes are left out.
NameIndex build_index(const Taxonomy& t, bool public_only = false, NameIndexOptions options = {});

/// NAME-SUBSTRING violations for a taxonomy, including names too short to index.
std::vector<Violation> check_names(const Taxonomy& t, NameIndexOptions options = {});

}  // namespace ocs
