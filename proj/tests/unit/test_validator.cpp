#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "ocs/catalog.hpp"
#include "ocs/validator.hpp"
#include "test_support.hpp"

using namespace ocs;
using ocs::testing::kFixtureDir;
using ocs::testing::kSeedDir;
using ocs::testing::make_corpus;
using ocs::testing::read_file;
using ocs::testing::seed_taxonomy;
using ocs::testing::TempDir;

namespace {

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// True when `b` is `a` with one line replaced, inserted or deleted.
bool one_line_edit(const std::string& a, const std::string& b) {
  auto x = lines_of(a), y = lines_of(b);
  std::size_t front = 0;
  while (front < x.size() && front < y.size() && x[front] == y[front]) ++front;
  std::size_t back = 0;
  while (back < x.size() - front && back < y.size() - front && x[x.size() - 1 - back] == y[y.size() - 1 - back]) ++back;
  auto rx = x.size() - front - back, ry = y.size() - front - back;
  return rx <= 1 && ry <= 1 && rx + ry >= 1;
}

std::set<RuleId> rules_of(const std::vector<Violation>& v) {
  std::set<RuleId> out;
  for (const auto& x : v) out.insert(x.rule);
  return out;
}

MethodDoc lenient(const std::string& text) { return parse_method(text, seed_taxonomy(), ParseMode::Lenient); }

const char* kHeader = "method \"Probe\"\navailable AC AH AS AD\nstart top-down: AS up | AH up | AD up | AC up\n";

}  // namespace

TEST(Validator, SeedCorpusIsClean) {
  auto corpus = load_corpus(kSeedDir);
  auto report = validate_corpus(corpus);
  EXPECT_TRUE(report.consistent);
  EXPECT_TRUE(report.coherent);
  for (const auto& v : report.violations) ADD_FAILURE() << format_violation(v);
}

// Each fixture is one edit away from its shipped file and trips exactly the
// rule it is named after.
TEST(Validator, EachMutationFlagsOnlyItsRule) {
  std::size_t seen = 0;
  for (const auto& dir : std::filesystem::directory_iterator(kFixtureDir / "mutations")) {
    auto rule = parse_rule_id(dir.path().filename().string());
    ASSERT_TRUE(rule) << dir.path();
    for (const auto& f : std::filesystem::directory_iterator(dir.path())) {
      EXPECT_TRUE(one_line_edit(read_file(kSeedDir / f.path().filename()), read_file(f.path()))) << f.path();
    }
    TempDir tmp;
    make_corpus(tmp.path(), dir.path());
    auto report = validate_corpus(load_corpus(tmp.path()));
    ASSERT_FALSE(report.violations.empty()) << dir.path();
    EXPECT_EQ(rules_of(report.violations), std::set<RuleId>{*rule}) << dir.path();
    if (*rule == RuleId::CoherenceEmptyClass) {
      EXPECT_TRUE(report.consistent);
      EXPECT_FALSE(report.coherent);
    } else {
      EXPECT_FALSE(report.consistent);
    }
    ++seen;
  }
  EXPECT_EQ(seen, std::size(kAllRules));
}

TEST(Validator, ViolationDetailNamesSourceFile) {
  TempDir tmp;
  make_corpus(tmp.path(), kFixtureDir / "mutations" / "SINGLE-HEAD");
  auto report = validate_corpus(load_corpus(tmp.path()));
  ASSERT_FALSE(report.violations.empty());
  EXPECT_EQ(report.violations[0].detail.rfind("overture.method: ", 0), 0u);
  EXPECT_EQ(report.violations[0].subject, "Overture");
}

TEST(Validator, StructuralRulesOnLenientDocs) {
  auto single = lenient(std::string(kHeader) + "step 1: square_up @packet -> step 3\nstep 2: square_up @packet\n"
                                               "step 3: square_up @packet\nend\n");
  EXPECT_EQ(rules_of(check_method(single, seed_taxonomy())), std::set<RuleId>{RuleId::SingleHead});
  auto cyc = lenient(std::string(kHeader) + "step 1: square_up @packet\nstep 2: square_up @packet -> step 1\nend\n");
  EXPECT_EQ(rules_of(check_method(cyc, seed_taxonomy())), std::set<RuleId>{RuleId::AcyclicPrecedes});
  auto term = lenient(std::string(kHeader) + "step 1: square_up @packet -> none\nend\n");
  EXPECT_EQ(rules_of(check_method(term, seed_taxonomy())), std::set<RuleId>{RuleId::TerminalEmpty});
}

TEST(Validator, OnlyRangeForNonActions) {
  auto doc = lenient(std::string(kHeader) + "step 1: crimp @packet\nend\n");
  auto v = check_method(doc, seed_taxonomy());
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].rule, RuleId::OnlyRange);
  EXPECT_EQ(v[0].subject, "Probe/step 1");
}

TEST(Validator, StaticParticipantCount) {
  auto doc = lenient("method \"Three\"\navailable AC AH AS\nstart top-down: AS up | AH up | AC up\n"
                     "step 1: elmsley_count_4as4 @packet\nend\n");
  EXPECT_EQ(rules_of(check_method(doc, seed_taxonomy())), std::set<RuleId>{RuleId::ExactlyN});
}

TEST(Validator, AvailableCards) {
  auto doc = lenient("method \"A\"\navailable AC AH\nstart top-down: AS up | AH up\nend\n");
  EXPECT_EQ(rules_of(check_method(doc, seed_taxonomy())), std::set<RuleId>{RuleId::AvailableCards});
}

TEST(Validator, IndividualRules) {
  auto g = parse_individuals(
      "individual j : jordan_count_4as4\nassert j hasParticipant AS\nassert j hasParticipant AH\n"
      "individual c : crimp\n"
      "individual u : cut_to_crimp\nindividual d : crimp\nindividual e : crimp\n"
      "assert d hasDedicatedCardAction u\nassert e hasDedicatedCardAction u\n"
      "assert d qualityOf e\n");
  auto v = check_individuals(seed_taxonomy(), g);
  auto rules = rules_of(v);
  EXPECT_TRUE(rules.count(RuleId::ExactlyN));
  EXPECT_TRUE(rules.count(RuleId::SomeExists));
  EXPECT_TRUE(rules.count(RuleId::InverseFunctional));
  EXPECT_TRUE(rules.count(RuleId::OnlyRange));
  auto subject_of = [&](RuleId r) {
    for (const auto& x : v)
      if (x.rule == r) return x.subject;
    return std::string();
  };
  EXPECT_EQ(subject_of(RuleId::ExactlyN), "j");
  EXPECT_EQ(subject_of(RuleId::SomeExists), "c");
  EXPECT_EQ(subject_of(RuleId::InverseFunctional), "u");
}

TEST(Validator, UndeclaredIndividualThrows) {
  auto g = parse_individuals("assert ghost hasParticipant AS\n");
  try {
    check_individuals(seed_taxonomy(), g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnresolvedReference);
  }
}

TEST(Validator, TypedIndividualPopulatesEmptyClass) {
  auto text = read_file(kFixtureDir / "mutations" / "COHERENCE-EMPTY-CLASS" / "taxonomy.tax");
  auto t = load_taxonomy(text);
  IndividualGraph none;
  auto bare = check_all(t, {}, none);
  EXPECT_FALSE(bare.coherent);
  auto g = parse_individuals("individual fc : false_count\n");
  auto populated = check_all(t, {}, g);
  EXPECT_TRUE(populated.coherent);
  EXPECT_TRUE(populated.violations.empty());
}

// The report does not depend on the order of documents or assertions.
TEST(Validator, OrderIndependence) {
  auto corpus = load_corpus(kSeedDir);
  std::vector<MethodDoc> docs = corpus.documents();
  for (const auto& rule : {"SINGLE-HEAD", "ONLY-RANGE", "TERMINAL-EMPTY"}) {
    docs.push_back(lenient(read_file(kFixtureDir / "mutations" / rule / "overture.method")));
  }
  auto g = parse_individuals(read_file(kFixtureDir / "mutations" / "INVERSE-FUNCTIONAL" / "individuals.ind"));
  auto base = check_all(corpus.taxonomy, docs, g);
  ASSERT_FALSE(base.violations.empty());
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto d = docs;
    auto h = g;
    std::shuffle(d.begin(), d.end(), rng);
    std::shuffle(h.individuals.begin(), h.individuals.end(), rng);
    std::shuffle(h.assertions.begin(), h.assertions.end(), rng);
    auto r = check_all(corpus.taxonomy, d, h);
    EXPECT_EQ(r.violations, base.violations);
    EXPECT_EQ(r.consistent, base.consistent);
  }
}

TEST(Validator, FormatViolation) {
  Violation v{RuleId::DepthBound, "side_steal", Severity::Error, "too deep"};
  EXPECT_EQ(format_violation(v), "ERROR DEPTH-BOUND side_steal: too deep");
  v.severity = Severity::Warning;
  EXPECT_EQ(format_violation(v).rfind("WARN ", 0), 0u);
  for (auto r : kAllRules) EXPECT_EQ(parse_rule_id(to_string(r)), r);
}
