#include <gtest/gtest.h>

#include <random>

#include "ocs/error.hpp"
#include "ocs/simulator.hpp"
#include "test_support.hpp"

using namespace ocs;
using ocs::testing::order_of;
using ocs::testing::packet_of;
using ocs::testing::seed_method;
using ocs::testing::seed_taxonomy;

namespace {

MethodDoc doc_of(const std::string& text, ParseMode mode = ParseMode::Strict) {
  return parse_method(text, seed_taxonomy(), mode);
}

Instruction ins(const std::string& action, Location loc = Location::whole_packet()) {
  return {resolve_action(seed_taxonomy(), action), loc};
}

}  // namespace

// Hand-computed states of the Overture, written before running it.
TEST(Simulator, OvertureTrace) {
  const std::vector<std::string> expected{
      "ASup AHup ADup ACup [squared]",       "ASup AHup ADup ACup [spread]",
      "ASdown AHup ADup ACup [spread]",      "ASdown AHup ADup ACdown [spread]",
      "ASdown AHup ADup ACdown [squared]",   "ASdown ADup ACdown AHup [squared]",
      "AHdown ACup ADdown ASup [squared]",   "AHdown ASup ACup ADdown [squared]",
      "AHdown ASup ACup ADdown [spread]",
  };
  auto r = run(seed_taxonomy(), seed_method("overture.method"));
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r.trace.states.size(), 9u);
  for (std::size_t k = 0; k < expected.size(); ++k) EXPECT_EQ(format_state(r.trace.states[k]), expected[k]) << k;
  auto report = check_effect(r.trace, *seed_method("overture.method").expect);
  EXPECT_TRUE(report.holds);
  EXPECT_TRUE(report.mismatches.empty());
}

TEST(Simulator, DumpTraceNumbersStates) {
  auto r = run(seed_taxonomy(), seed_method("overture.method"));
  auto text = dump_trace(r.trace);
  EXPECT_EQ(text.rfind("0: ASup AHup ADup ACup [squared]\n", 0), 0u);
  EXPECT_NE(text.find("\n8: AHdown ASup ACup ADdown [spread]\n"), std::string::npos);
}

TEST(Simulator, EveryCorpusExpectationHolds) {
  for (const char* f : {"overture.method", "twin_reversal.method", "lift_and_show.method", "three_pile_flush.method",
                        "bottom_control.method", "crimp_locator.method", "ascanio_sandwich.method",
                        "color_triple.method", "practice_private.method", "twelve_card_cut.method",
                        "empty_score.method", "jordan_display.method"}) {
    auto doc = seed_method(f);
    auto r = run(seed_taxonomy(), doc);
    ASSERT_TRUE(r.ok()) << f << ": " << r.error->detail;
    EXPECT_EQ(r.trace.steps(), doc.steps().size()) << f;
    if (doc.expect) EXPECT_TRUE(check_effect(r.trace, *doc.expect).holds) << f;
  }
}

TEST(Simulator, CrimpLocatorBringsCrimpedCardToTop) {
  auto r = run(seed_taxonomy(), seed_method("crimp_locator.method"));
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(format_state(r.trace.states[2]), "5Sdown 6Sdown ASdown 2Sdown 3Sdown 4Sdown [squared]");
  EXPECT_EQ(r.trace.states[2].at(5).qualities.size(), 1u);
  EXPECT_EQ(order_of(r.trace.states[3]).front(), *parse_card("3S"));
  EXPECT_TRUE(r.trace.states[4].at(1).qualities.empty());
  EXPECT_EQ(r.trace.final_state().at(1).orientation, Orientation::FaceUp);
}

TEST(Simulator, ClassReferenceDispatchesToSizeMatchingVariant) {
  auto s = packet_of({"5C", "5H", "5S", "5D"});
  auto out = step(seed_taxonomy(), s, ins("jordan_count"));
  EXPECT_EQ(out, step(seed_taxonomy(), s, ins("jordan_count_4as4")));
}

TEST(Simulator, ParticipantMismatch) {
  for (auto codes : {std::vector<std::string>{"AS", "AH", "AD"}, std::vector<std::string>{"AS", "AH", "AD", "AC", "KS"}}) {
    try {
      step(seed_taxonomy(), packet_of(codes), ins("jordan_count_4as4"));
      FAIL();
    } catch (const StepFailure& e) {
      EXPECT_EQ(e.kind(), StepErrorKind::ParticipantMismatch);
      EXPECT_EQ(e.code(), ErrorCode::ParticipantMismatch);
    }
  }
  // Without a size-matching variant the class reference cannot dispatch either.
  EXPECT_THROW(step(seed_taxonomy(), packet_of({"AS", "AH", "AD"}), ins("jordan_count")), StepFailure);
}

TEST(Simulator, FormMismatchStopsRunWithPartialTrace) {
  auto doc = doc_of("method \"F\"\navailable AC AH AS AD\nstart top-down: AS up | AH up | AD up | AC up\n"
                    "step 1: spread_in_the_hands @packet\nstep 2: elmsley_count_4as4 @packet\n"
                    "step 3: close_the_spread @packet\nend\n");
  auto r = run(seed_taxonomy(), doc);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.error->step_index, 2u);
  EXPECT_EQ(r.error->kind, StepErrorKind::FormMismatch);
  EXPECT_EQ(r.trace.states.size(), 2u);
}

TEST(Simulator, OutOfRangeFocus) {
  auto doc = doc_of("method \"R\"\navailable AC AH\nstart top-down: AC up | AH up\n"
                    "step 1: spread_in_the_hands @packet\nstep 2: turn_over_single @pos 3\nend\n");
  auto r = run(seed_taxonomy(), doc);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.error->kind, StepErrorKind::OutOfRange);
  EXPECT_EQ(r.error->step_index, 2u);
}

TEST(Simulator, QualityErrors) {
  auto s = packet_of({"AS", "AH", "AD"});
  try {
    step(seed_taxonomy(), s, ins("cut_to_crimp"));
    FAIL();
  } catch (const StepFailure& e) {
    EXPECT_EQ(e.kind(), StepErrorKind::QualityError);
  }
  auto c = step(seed_taxonomy(), s, ins("crimp_use_of", Location::top()));
  EXPECT_THROW(step(seed_taxonomy(), c, ins("crimp_use_of", Location::top())), StepFailure);
  EXPECT_THROW(step(seed_taxonomy(), s, ins("crimp_removal", Location::top())), StepFailure);
}

TEST(Simulator, AbstractClassIsUnknownAction) {
  try {
    step(seed_taxonomy(), packet_of({"AS", "AH", "AD", "AC"}), ins("false_count"));
    FAIL();
  } catch (const StepFailure& e) {
    EXPECT_EQ(e.kind(), StepErrorKind::UnknownAction);
  }
}

TEST(Simulator, CutCounts) {
  auto s = packet_of({"AS", "2S", "3S", "4S", "5S", "6S"});
  auto names = [](const StackState& st) { return format_state(st); };
  EXPECT_EQ(names(step(seed_taxonomy(), s, ins("straight_cut", Location::top()))),
            "2Sup 3Sup 4Sup 5Sup 6Sup ASup [squared]");
  EXPECT_EQ(names(step(seed_taxonomy(), s, ins("straight_cut", Location::bottom()))),
            "6Sup ASup 2Sup 3Sup 4Sup 5Sup [squared]");
  EXPECT_EQ(names(step(seed_taxonomy(), s, ins("straight_cut"))), "4Sup 5Sup 6Sup ASup 2Sup 3Sup [squared]");
  EXPECT_EQ(names(step(seed_taxonomy(), s, ins("straight_cut", Location::position(2)))),
            "3Sup 4Sup 5Sup 6Sup ASup 2Sup [squared]");
}

TEST(Simulator, CheckEffectReportsMismatches) {
  auto r = run(seed_taxonomy(), seed_method("overture.method"));
  EffectAssertion e;
  e.expected[*parse_card("AH")] = Orientation::FaceUp;
  e.expected[*parse_card("AS")] = Orientation::FaceUp;
  auto rep = check_effect(r.trace, e);
  EXPECT_FALSE(rep.holds);
  ASSERT_EQ(rep.mismatches.size(), 1u);
  EXPECT_EQ(rep.mismatches[0], (CardMismatch{*parse_card("AH"), Orientation::FaceUp, Orientation::FaceDown}));
  EffectAssertion missing;
  missing.expected[*parse_card("KS")] = Orientation::FaceUp;
  try {
    check_effect(r.trace, missing);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::UnknownCardInAssertion);
  }
  EXPECT_TRUE(check_effect(r.trace, EffectAssertion{}).holds);
}

TEST(Simulator, InitState) {
  auto s = init_state(seed_method("overture.method"));
  EXPECT_EQ(s.form(), PacketForm::Squared);
  EXPECT_EQ(s.aggregate_kind(), AggregateKind::Packet);
  std::vector<StartEntry> one{{*parse_card("AS"), Orientation::FaceUp}};
  EXPECT_EQ(init_state(one).aggregate_kind(), AggregateKind::Deck);
  try {
    init_state(one, AggregateKind::Packet);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvariantViolation);
  }
  try {
    init_state(std::vector<StartEntry>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyStartState);
  }
}

TEST(Simulator, PrivateVariantRuns) {
  auto s = packet_of({"8C", "8H", "8S", "8D"});
  EXPECT_EQ(format_state(step(seed_taxonomy(), s, ins("depth_illusion_4", Location::top()))),
            "8Hup 8Cup 8Sup 8Dup [squared]");
}

// A run cut short by `limit` is a prefix of the full run, for every corpus
// method and every limit.
TEST(Simulator, PrefixProperty) {
  for (const char* f : {"overture.method", "crimp_locator.method", "color_triple.method", "twelve_card_cut.method"}) {
    auto doc = seed_method(f);
    auto full = run(seed_taxonomy(), doc);
    for (std::size_t k = 0; k <= doc.steps().size(); ++k) {
      auto part = run(seed_taxonomy(), doc, k);
      ASSERT_TRUE(part.ok());
      ASSERT_EQ(part.trace.states.size(), k + 1);
      for (std::size_t i = 0; i <= k; ++i) EXPECT_EQ(part.trace.states[i], full.trace.states[i]);
    }
  }
}

// Random instruction sequences: the simulator never loses or duplicates a
// card, and a failing run keeps exactly the states before the failure.
TEST(Simulator, RandomSequencesConserveCards) {
  std::vector<std::string> pool;
  for (const auto& [id, c] : seed_taxonomy().classes()) {
    if (seed_taxonomy().is_card_action(id) && c.kind != ActionKind::Abstract) pool.push_back(id);
  }
  for (const auto& [id, v] : seed_taxonomy().variants()) pool.push_back(id);
  std::mt19937 rng(321);
  auto initial = packet_of({"AS", "AH", "AD", "AC"});
  std::multiset<CardName> cards;
  for (const auto& e : initial.entries()) cards.insert(e.card);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Instruction> steps;
    auto n = rng() % 12;
    for (std::size_t i = 0; i < n; ++i) {
      Location loc;
      switch (rng() % 4) {
        case 0: loc = Location::top(); break;
        case 1: loc = Location::bottom(); break;
        case 2: loc = Location::position(1 + rng() % 5); break;
        default: loc = Location::whole_packet(); break;
      }
      steps.push_back(ins(pool[rng() % pool.size()], loc));
    }
    auto r = run(seed_taxonomy(), initial, steps);
    for (const auto& st : r.trace.states) {
      std::multiset<CardName> got;
      for (const auto& e : st.entries()) got.insert(e.card);
      ASSERT_EQ(got, cards);
    }
    if (r.ok()) {
      EXPECT_EQ(r.trace.steps(), steps.size());
    } else {
      EXPECT_EQ(r.trace.states.size(), r.error->step_index);
    }
  }
}
