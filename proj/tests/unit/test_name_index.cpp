#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ocs/error.hpp"
#include "ocs/name_index.hpp"
#include "test_support.hpp"

using namespace ocs;
using ocs::testing::brute_violating_substrings;
using ocs::testing::read_file;
using ocs::testing::seed_taxonomy;

namespace {

std::vector<std::string> labels(const Completion& c) {
  std::vector<std::string> out;
  for (const auto& x : c.candidates) out.push_back(x.label);
  return out;
}

std::string seed_text() { return read_file(ocs::testing::kSeedDir / "taxonomy.tax"); }

// Linear-scan autocomplete over canonical forms, with the same alt rule.
std::vector<Candidate> brute_matches(const std::vector<NamedClass>& names, const std::vector<NamedClass>& alts,
                                     const std::string& q) {
  std::vector<std::pair<std::string, Candidate>> hits;
  std::set<std::string> via_primary;
  for (const auto& n : names) {
    auto c = canonical_form(n.name, {"(use of)"});
    if (c.find(q) != std::string::npos) {
      hits.push_back({c, {n.name, {n.class_id}, false}});
      via_primary.insert(n.class_id);
    }
  }
  std::map<std::string, Candidate> grouped;
  for (const auto& a : alts) {
    auto c = canonical_form(a.name, {"(use of)"});
    auto& g = grouped[c];
    if (g.label.empty()) g = {a.name, {}, true};
    if (std::find(g.class_ids.begin(), g.class_ids.end(), a.class_id) == g.class_ids.end()) g.class_ids.push_back(a.class_id);
  }
  for (auto& [c, g] : grouped) {
    std::sort(g.class_ids.begin(), g.class_ids.end());
    if (c.find(q) == std::string::npos) continue;
    if (std::all_of(g.class_ids.begin(), g.class_ids.end(), [&](const auto& id) { return via_primary.count(id); })) continue;
    hits.push_back({c, g});
  }
  std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first, a.second.alt, a.second.class_ids) < std::tie(b.first, b.second.alt, b.second.class_ids);
  });
  std::vector<Candidate> out;
  for (auto& h : hits) out.push_back(h.second);
  return out;
}

}  // namespace

TEST(NameIndex, CanonicalForm) {
  EXPECT_EQ(canonical_form("Crimp (use of)", {"(use of)"}), "crimp");
  EXPECT_EQ(canonical_form("  Jordan   COUNT ", {}), "jordan count");
  EXPECT_EQ(canonical_form("Crimp (USE OF)", {"(use of)"}), "crimp");
}

TEST(NameIndex, ShortNameRejected) {
  try {
    NameIndex::build({{"straight_cut", "Cut"}}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NameTooShort);
    EXPECT_NE(std::string(e.what()).find("straight_cut"), std::string::npos);
  }
  try {
    NameIndex::build({}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyNameSet);
  }
}

TEST(NameIndex, ShortNameIsANameSubstringViolation) {
  auto t = load_taxonomy("class short : card_action kind=straight vis=public\n  name \"Cut\"\n  op cut\n");
  auto v = check_names(t);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].rule, RuleId::NameSubstring);
  EXPECT_EQ(v[0].subject, "short");
}

TEST(NameIndex, SeedNamesAreSubstringFree) {
  auto idx = build_index(seed_taxonomy());
  EXPECT_TRUE(idx.check_substring_free().empty());
  EXPECT_TRUE(check_names(seed_taxonomy()).empty());
}

TEST(NameIndex, SixthCountBreaksTheBound) {
  auto t = load_taxonomy(seed_text() + "\nclass biddle_count : false_count kind=abstract vis=public\n"
                                       "  name \"Biddle Count\"\n");
  auto v = build_index(t).check_substring_free();
  auto it = std::find_if(v.begin(), v.end(), [](const auto& x) { return x.substring == "count"; });
  ASSERT_NE(it, v.end());
  EXPECT_EQ(it->names.size(), 6u);
  EXPECT_TRUE(std::is_sorted(it->names.begin(), it->names.end()));
  for (const auto& x : v) EXPECT_EQ(x.substring.size(), 5u);
  auto violations = check_names(t);
  EXPECT_TRUE(std::any_of(violations.begin(), violations.end(),
                          [](const auto& x) { return x.subject == "\"count\""; }));
}

TEST(NameIndex, AutocompleteBasics) {
  auto idx = build_index(seed_taxonomy());
  auto count = idx.autocomplete("count");
  EXPECT_FALSE(count.overflow);
  EXPECT_EQ(labels(count), (std::vector<std::string>{"Elmsley Count", "False Count", "Flushtration Count",
                                                     "Jordan Count", "Straight Count"}));
  auto c = idx.autocomplete("c");
  EXPECT_TRUE(c.overflow);
  EXPECT_EQ(c.candidates.size(), 5u);
  EXPECT_TRUE(idx.autocomplete("").candidates.empty());
  EXPECT_TRUE(idx.autocomplete("zarrow").candidates.empty());
  EXPECT_EQ(labels(idx.autocomplete("JORDAN")), std::vector<std::string>{"Jordan Count"});
}

TEST(NameIndex, AlternativeNamesMarked) {
  auto idx = build_index(seed_taxonomy());
  auto r = idx.autocomplete("immediate");
  ASSERT_EQ(r.candidates.size(), 1u);
  EXPECT_EQ(r.candidates[0], (Candidate{"Immediate Bottom Placement", {"convincing_control"}, true}));
  auto turn = idx.autocomplete("turnover");
  ASSERT_EQ(turn.candidates.size(), 2u);
  EXPECT_EQ(turn.candidates[1].label, "Turnover");
  EXPECT_EQ(turn.candidates[1].class_ids, (std::vector<std::string>{"packet_turnover", "turn_over_single"}));
  // The alt is dropped when the primary already found its class.
  auto ghost = idx.autocomplete("elmsley");
  EXPECT_EQ(ghost.candidates.size(), 1u);
  auto g = idx.autocomplete("ghost");
  ASSERT_EQ(g.candidates.size(), 1u);
  EXPECT_TRUE(g.candidates[0].alt);
}

TEST(NameIndex, PublicIndexHidesPrivateClasses) {
  EXPECT_EQ(build_index(seed_taxonomy(), false).autocomplete("depth illusion").candidates.size(), 1u);
  EXPECT_TRUE(build_index(seed_taxonomy(), true).autocomplete("depth illusion").candidates.empty());
}

// Every query of every seed substring agrees with the linear scan.
TEST(NameIndex, AutocompleteMatchesLinearScan) {
  std::vector<NamedClass> names, alts;
  for (const auto& [id, c] : seed_taxonomy().classes()) {
    names.push_back({id, c.primary_name});
    for (const auto& a : c.alt_names) alts.push_back({id, a});
  }
  auto idx = NameIndex::build(names, alts);
  std::set<std::string> queries;
  for (const auto& n : names) {
    auto c = canonical_form(n.name, {"(use of)"});
    for (std::size_t len = 1; len <= 8; ++len)
      for (std::size_t at = 0; at + len <= c.size(); ++at) queries.insert(c.substr(at, len));
  }
  for (const auto& q : queries) {
    if (q.front() == ' ' || q.back() == ' ') continue;
    auto expected = brute_matches(names, alts, q);
    auto got = idx.autocomplete(q);
    EXPECT_EQ(got.overflow, expected.size() > 5) << q;
    if (expected.size() > 5) expected.resize(5);
    EXPECT_EQ(got.candidates, expected) << q;
  }
}

// The gram index finds exactly the L-long substrings the brute force finds,
// and every longer violating substring contains one of them.
TEST(NameIndex, SubstringCheckMatchesBruteForce) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<NamedClass> names;
    std::vector<std::string> canon;
    auto n = 1 + rng() % 30;
    for (std::size_t i = 0; i < n; ++i) {
      std::string s;
      auto len = 5 + rng() % 6;
      for (std::size_t k = 0; k < len; ++k) s += static_cast<char>('a' + rng() % 3);
      names.push_back({"c" + std::to_string(i), s});
      canon.push_back(s);
    }
    auto got = NameIndex::build(names, {}).check_substring_free();
    std::set<std::string> got_set;
    for (const auto& v : got) {
      got_set.insert(v.substring);
      EXPECT_GT(v.names.size(), 5u);
    }
    auto brute = brute_violating_substrings(canon, 5, 5);
    std::set<std::string> brute_grams;
    for (const auto& s : brute) {
      if (s.size() == 5) brute_grams.insert(s);
      bool covered = false;
      for (std::size_t at = 0; at + 5 <= s.size(); ++at) covered = covered || got_set.count(s.substr(at, 5));
      EXPECT_TRUE(covered) << s;
    }
    EXPECT_EQ(got_set, brute_grams);
  }
}

TEST(NameIndex, SeedGestureDistanceBounded) {
  auto idx = build_index(seed_taxonomy());
  for (const auto& [id, c] : seed_taxonomy().classes()) {
    auto g = idx.gesture_distance(id);
    EXPECT_LE(g.keystrokes, 5u) << id;
    EXPECT_LE(g.clicks, 2u) << id;
    auto r = idx.autocomplete(g.query);
    EXPECT_FALSE(r.overflow) << id;
    EXPECT_TRUE(std::any_of(r.candidates.begin(), r.candidates.end(), [&](const Candidate& x) {
      return std::find(x.class_ids.begin(), x.class_ids.end(), id) != x.class_ids.end();
    })) << id;
  }
  EXPECT_THROW(idx.gesture_distance("no_such_class"), Error);
}

TEST(NameIndex, GestureDistanceExample) {
  auto idx = build_index(seed_taxonomy());
  auto g = idx.gesture_distance("jordan_count");
  EXPECT_EQ(g.clicks, 1u);
  EXPECT_LE(g.keystrokes, 2u);
}

// A class whose own name is crowded out is reachable only through a shared
// alternative name, which needs a second click to pick the class.
TEST(NameIndex, SharedAltCostsSecondClick) {
  std::vector<NamedClass> names{{"a", "aaaaa"},  {"b", "bbbbb"},  {"x1", "aaaaab"}, {"x2", "aaaaac"},
                                {"x3", "aaaaad"}, {"x4", "aaaaae"}, {"x5", "aaaaaf"}};
  std::vector<NamedClass> alts{{"a", "Shared Name"}, {"b", "Shared Name"}};
  auto idx = NameIndex::build(names, alts);
  auto g = idx.gesture_distance("a");
  EXPECT_EQ(g.clicks, 2u);
  EXPECT_EQ(g.keystrokes, 1u);
  EXPECT_EQ(idx.gesture_distance("b").clicks, 1u);
}
