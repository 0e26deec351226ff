#include <gtest/gtest.h>

#include <random>

#include "ocs/error.hpp"
#include "ocs/taxonomy.hpp"
#include "test_support.hpp"

using namespace ocs;
using ocs::testing::elmsley_oracle;
using ocs::testing::jordan_oracle;
using ocs::testing::seed_taxonomy;

namespace {

const char* kSmall = R"tax(class card_sleight : card_action kind=abstract vis=public
  name "Card Sleight"
  def "Secret."

class false_count : card_sleight kind=abstract vis=public
  name "False Count"

class flushtration_count : false_count kind=sleight vis=public
  name "Flushtration Count"
  alt "Flush Count"
  def "Shows one face."

variant flush_4 of flushtration_count participants=4 perm=4,3,2,1 flips=none
  name "Flushtration Count (4 cards)"

class straight_card_action : card_action kind=abstract vis=public
  name "Straight Card Action"

class spread_in_the_hands : straight_card_action kind=straight vis=public
  name "Spread"
  op spread
)tax";

ErrorCode code_of(const std::string& text) {
  try {
    load_taxonomy(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::Io;
}

}  // namespace

TEST(Taxonomy, BuiltinsAlwaysPresent) {
  auto t = load_taxonomy("");
  for (auto id : {builtin::kProcess, builtin::kCardAction, builtin::kQuality, builtin::kInformationContentEntity}) {
    ASSERT_NE(t.find_class(id), nullptr) << id;
    EXPECT_TRUE(t.find_class(id)->builtin);
  }
  EXPECT_TRUE(t.descends_from(builtin::kCardAction, builtin::kProcess));
}

TEST(Taxonomy, DepthExamples) {
  const auto& t = seed_taxonomy();
  EXPECT_EQ(depth(t, "card_action"), 0u);
  EXPECT_EQ(depth(t, "card_sleight"), 1u);
  EXPECT_EQ(depth(t, "false_count"), 2u);
  EXPECT_EQ(depth(t, "jordan_count"), 3u);
  EXPECT_EQ(depth(t, "side_steal"), 4u);
  EXPECT_EQ(depth(t, "crimp_use_of"), 1u);
  EXPECT_EQ(depth(t, "cut_to_crimp"), 2u);
  try {
    depth(t, "crimp");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnderCardAction);
  }
  EXPECT_THROW(depth(t, "no_such_class"), Error);
}

TEST(Taxonomy, EverySeedActionWithinDepthBound) {
  const auto& t = seed_taxonomy();
  for (const auto& [id, c] : t.classes()) {
    if (t.is_card_action(id)) EXPECT_LE(depth(t, id), kMaxActionDepth) << id;
  }
  EXPECT_TRUE(validate_taxonomy(t).empty());
}

TEST(Taxonomy, DepthBoundFlagged) {
  auto text = ocs::testing::read_file(ocs::testing::kSeedDir / "taxonomy.tax");
  auto pos = text.find("class side_steal : top_control");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, std::string("class side_steal : top_control").size(), "class side_steal : convincing_control");
  auto v = validate_taxonomy(load_taxonomy(text));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].rule, RuleId::DepthBound);
  EXPECT_EQ(v[0].subject, "side_steal");
}

TEST(Taxonomy, LookupPrimaryFirstAndIgnoringCase) {
  const auto& t = seed_taxonomy();
  auto hits = lookup(t, "ghost count");
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0]->id, "elmsley_count");
  auto turn = lookup(t, "Turnover");
  ASSERT_EQ(turn.size(), 2u);
  EXPECT_TRUE(lookup(t, "Zarrow Shuffle").empty());
  EXPECT_EQ(lookup(t, "JORDAN COUNT").at(0)->id, "jordan_count");
}

TEST(Taxonomy, LookupOrdersPrimaryBeforeAlternative) {
  auto t = load_taxonomy(std::string(kSmall) + R"(
class flush_count : false_count kind=abstract vis=public
  name "Flush Count"
)");
  auto hits = lookup(t, "flush count");
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits[0]->id, "flush_count");
  EXPECT_EQ(hits[1]->id, "flushtration_count");
}

TEST(Taxonomy, SerializeFixpoint) {
  auto small = load_taxonomy(kSmall);
  EXPECT_EQ(load_taxonomy(serialize_taxonomy(small)), small);
  const auto& seed = seed_taxonomy();
  auto text = serialize_taxonomy(seed);
  EXPECT_EQ(load_taxonomy(text), seed);
  EXPECT_EQ(serialize_taxonomy(load_taxonomy(text)), text);
}

TEST(Taxonomy, ParsedFields) {
  auto t = load_taxonomy(kSmall);
  const auto& c = t.get_class("flushtration_count");
  EXPECT_EQ(c.kind, ActionKind::Sleight);
  EXPECT_EQ(c.alt_names, std::vector<std::string>{"Flush Count"});
  EXPECT_EQ(c.metadata.definition, "Shows one face.");
  const auto& v = t.get_variant("flush_4");
  EXPECT_EQ(v.participants, 4u);
  EXPECT_EQ(v.transform.perm, Permutation({4, 3, 2, 1}));
  EXPECT_EQ(v.display_name(), "Flushtration Count (4 cards)");
  ASSERT_TRUE(t.get_class("spread_in_the_hands").binding);
  EXPECT_EQ(t.get_class("spread_in_the_hands").binding->op, StraightOp::Spread);
  EXPECT_EQ(t.variants_of("flushtration_count").size(), 1u);
  EXPECT_EQ(t.children_of("card_sleight").size(), 1u);
}

TEST(Taxonomy, SeedLinksAndPrivateVariant) {
  const auto& t = seed_taxonomy();
  const auto& j = t.get_class("jordan_count");
  EXPECT_TRUE(j.metadata.archive_link);
  EXPECT_TRUE(j.metadata.credits_link);
  EXPECT_EQ(t.get_variant("depth_illusion_4").visibility, Visibility::Private);
  EXPECT_EQ(t.get_class("depth_illusion").visibility, Visibility::Private);
}

TEST(Taxonomy, BuildErrors) {
  EXPECT_EQ(code_of(std::string(kSmall) + "\nclass x : card_sleight kind=abstract vis=public\n  name \"False Count\"\n"),
            ErrorCode::DuplicatePrimaryName);
  EXPECT_EQ(code_of(std::string(kSmall) + "\nclass false_count : card_sleight kind=abstract vis=public\n  name \"X\"\n"),
            ErrorCode::DuplicateId);
  EXPECT_EQ(code_of("class a : nowhere kind=abstract vis=public\n  name \"Aaaaa\"\n"), ErrorCode::UnknownParent);
  EXPECT_EQ(code_of("class a : b kind=abstract vis=public\n  name \"Aaaaa\"\n"
                    "class b : a kind=abstract vis=public\n  name \"Bbbbb\"\n"),
            ErrorCode::CyclicParent);
  EXPECT_EQ(code_of("variant v of nothing participants=2 perm=2,1 flips=none\n"), ErrorCode::UnknownId);
  EXPECT_EQ(code_of(std::string(kSmall) + "\nvariant v of flushtration_count participants=3 perm=2,1 flips=none\n"),
            ErrorCode::SizeMismatch);
  EXPECT_EQ(code_of(std::string(kSmall) + "\nvariant v of flushtration_count participants=2 perm=2,1 flips=3\n"),
            ErrorCode::OutOfRange);
}

TEST(Taxonomy, DuplicatePrimaryNameIgnoresCase) {
  EXPECT_EQ(code_of(std::string(kSmall) + "\nclass x : card_sleight kind=abstract vis=public\n  name \"false count\"\n"),
            ErrorCode::DuplicatePrimaryName);
}

TEST(Taxonomy, SyntaxErrorsCarryLine) {
  try {
    load_taxonomy("class a : card_action kind=abstract vis=public\n  name \"Aaaaa\"\n  bogus \"x\"\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    load_taxonomy("\n\nclass a : card_action kind=abstract vis=public\n  def \"no name\"\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(load_taxonomy("variant v of card_action participants=2 perm=1,1 flips=none\n"), ParseError);
  EXPECT_THROW(load_taxonomy("class a : card_action kind=weird vis=public\n  name \"Aaaaa\"\n"), ParseError);
}

TEST(Taxonomy, OnlyRangeOutsideCardAction) {
  auto t = load_taxonomy("class odd : quality kind=sleight vis=public\n  name \"Oddity\"\n");
  auto v = validate_taxonomy(t);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].rule, RuleId::OnlyRange);
}

TEST(Taxonomy, EmptySleightClassWarns) {
  auto t = load_taxonomy(std::string(kSmall) + "\nclass lonely : false_count kind=sleight vis=public\n  name \"Lonely\"\n");
  auto v = validate_taxonomy(t);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].rule, RuleId::CoherenceEmptyClass);
  EXPECT_EQ(v[0].severity, Severity::Warning);
}

// The seed transforms agree with an independent hand-transfer model of the
// counts.
TEST(Taxonomy, CountVariantsMatchHandTransferOracle) {
  const auto& t = seed_taxonomy();
  EXPECT_EQ(variant_transform(t, "elmsley_count_4as4").perm.images(), elmsley_oracle());
  EXPECT_EQ(variant_transform(t, "jordan_count_4as4").perm.images(), jordan_oracle());
  EXPECT_TRUE(variant_transform(t, "elmsley_count_4as4").flips.empty());
  EXPECT_EQ(elmsley_oracle(), (std::vector<std::size_t>{1, 4, 2, 3}));
  EXPECT_EQ(jordan_oracle(), (std::vector<std::size_t>{1, 3, 4, 2}));
  EXPECT_THROW(variant_transform(t, "no_variant"), Error);
}

// Random well-formed trees survive a serialize round trip and give every
// class the depth of its generated chain.
TEST(Taxonomy, RandomTreesRoundTripAndDepth) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ActionClass> classes;
    std::map<std::string, std::size_t> expected;
    std::size_t n = 1 + rng() % 25;
    for (std::size_t i = 0; i < n; ++i) {
      ActionClass c;
      c.id = "c" + std::to_string(i);
      c.primary_name = "Class Number " + std::to_string(i);
      if (i == 0 || rng() % 3 == 0) {
        c.parent = std::string(builtin::kCardAction);
        expected[c.id] = 1;
      } else {
        auto p = rng() % i;
        c.parent = "c" + std::to_string(p);
        expected[c.id] = expected["c" + std::to_string(p)] + 1;
      }
      if (rng() % 4 == 0) c.alt_names.push_back("Alternative " + std::to_string(i));
      classes.push_back(c);
    }
    auto t = Taxonomy::build(classes, {});
    for (const auto& [id, d] : expected) EXPECT_EQ(depth(t, id), d);
    EXPECT_EQ(load_taxonomy(serialize_taxonomy(t)), t);
  }
}
