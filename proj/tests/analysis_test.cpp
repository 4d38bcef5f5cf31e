#include <pomodel/analysis.hpp>
#include <pomodel/error.hpp>
#include <pomodel/transforms.hpp>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <set>

namespace pomodel {
namespace {

using testing::fixture;
using testing::Ids;
using testing::state_fixture;

std::set<Ids> cut_ids(const StateModel &sm, const DetectionResult &r) {
  std::set<Ids> out;
  for (const auto &c : r.cuts) {
    Ids ids;
    for (ElementIndex s : c)
      ids.push_back(sm.poset().id(s));
    out.insert(testing::sorted(ids));
  }
  return out;
}

std::size_t count_of(const char *model, const char *pred) {
  StateModel sm = state_fixture(model);
  PredicatePtr p = io::predicate_from_json(fixture(pred));
  return detect_width_predicate(sm, *p, DetectMode::Count).count;
}

TEST(Predicates, BothProcessesLate) {
  StateModel sm = state_fixture("message-run.state.json");
  auto late = pred::all_of({pred::position(1, Comparison::GreaterEqual, 2),
                            pred::position(2, Comparison::GreaterEqual, 2)});
  DetectionResult r = detect_width_predicate(sm, *late);
  EXPECT_EQ(r.count, 4u);
  EXPECT_EQ(r.examined, 12u);
  EXPECT_EQ(cut_ids(sm, r), (std::set<Ids>{{"b'", "f'"},
                                           {"c'", "f'"},
                                           {"b'", "g'"},
                                           {"c'", "g'"}}));
  EXPECT_EQ(count_of("message-run.state.json", "late.pred.json"), 4u);
}

TEST(Predicates, ConstantsAndModes) {
  StateModel sm = state_fixture("message-run.state.json");
  EXPECT_EQ(detect_width_predicate(sm, *pred::truth()).cuts.size(), 12u);
  EXPECT_EQ(detect_width_predicate(sm, *pred::falsity()).count, 0u);
  DetectionResult first =
      detect_width_predicate(sm, *pred::truth(), DetectMode::First);
  EXPECT_EQ(first.count, 1u);
  EXPECT_EQ(first.examined, 1u);
  DetectionResult counted =
      detect_width_predicate(sm, *pred::truth(), DetectMode::Count);
  EXPECT_EQ(counted.count, 12u);
  EXPECT_TRUE(counted.cuts.empty());
}

TEST(Predicates, ApplicationExamples) {
  EXPECT_EQ(count_of("sync.state.json", "barrier.pred.json"), 1u);
  EXPECT_EQ(count_of("sync.state.json", "deadlock.pred.json"), 1u);
  EXPECT_EQ(count_of("sync.state.json", "permits.pred.json"), 4u);
  StateModel sm = state_fixture("sync.state.json");
  auto busy = pred::count("waiting", Comparison::GreaterEqual, 2);
  auto negated = pred::negate(busy);
  EXPECT_EQ(detect_width_predicate(sm, *busy, DetectMode::Count).count +
                detect_width_predicate(sm, *negated, DetectMode::Count).count,
            21u);
}

TEST(Predicates, MissingAttributeIsFalseWithWarning) {
  StateModel sm = state_fixture("message-run.state.json");
  DetectionResult r = detect_width_predicate(
      sm, *pred::attr(1, "load", Comparison::Less, 3.0));
  EXPECT_EQ(r.count, 0u);
  ASSERT_FALSE(r.warnings.empty());
  EXPECT_NE(r.warnings[0].find("load"), std::string::npos);

  StateModel sync = state_fixture("sync.state.json");
  r = detect_width_predicate(sync,
                             *pred::attr(1, "waiting", Comparison::Equal, 1.0));
  EXPECT_EQ(r.count, 0u);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(Predicates, Validation) {
  StateModel sm = state_fixture("message-run.state.json");
  EXPECT_THROW(detect_width_predicate(
                   sm, *pred::position(3, Comparison::Equal, 0)),
               PredicateError);
  EXPECT_THROW(
      detect_width_predicate(sm, *pred::negate(nullptr)), PredicateError);
  EXPECT_THROW(detect_width_predicate(state_fixture("stuck-pair.state.json"),
                                      *pred::truth()),
               NotWidthExtensible);
  EXPECT_FALSE(parse_comparison("=<"));
  EXPECT_EQ(parse_comparison("!="), Comparison::NotEqual);
}

TEST(Predicates, NativeCallback) {
  StateModel sm = state_fixture("message-run.state.json");
  DetectionResult r = detect_width_predicate(
      sm, [](const StateModel &m, std::span<const ElementIndex> cut) {
        return m.position_of(cut[0]) == m.position_of(cut[1]);
      });
  // {a0,e0}, {a',e'}, {b',f'}, {c',g'}
  EXPECT_EQ(r.count, 4u);
}

TEST(Checkpoints, InducedModel) {
  StateModel sm = state_fixture("zigzag.state.json");
  CheckpointMarking marks = io::marks_from_json(fixture("zigzag.marks.json"));
  StateModel im = induced_checkpoint_model(sm, marks);
  const Poset &p = im.poset();
  EXPECT_EQ(p.size(), 6u);
  EXPECT_EQ(im.final_index(2), 2u);
  EXPECT_EQ(p.id(im.state(2, 1)), "2.2");
  EXPECT_TRUE(p.less(p.index_of("2.0"), p.index_of("1.1")));
  EXPECT_TRUE(p.less(p.index_of("1.1"), p.index_of("2.2")));

  CheckpointMarking everything{{{0, 1, 2}, {0, 1, 2, 3}}};
  EXPECT_TRUE(same_state_order(induced_checkpoint_model(sm, everything), sm));
  CheckpointMarking ends{{{0, 2}, {0, 3}}};
  StateModel e = induced_checkpoint_model(sm, ends);
  EXPECT_EQ(e.poset().size(), 4u);
  EXPECT_TRUE(e.poset().less(e.state(1, 0), e.state(2, 1)));
}

TEST(Checkpoints, BadMarkings) {
  StateModel sm = state_fixture("zigzag.state.json");
  for (CheckpointMarking bad : {CheckpointMarking{{{1, 2}, {0, 3}}},
                                CheckpointMarking{{{0, 1}, {0, 3}}},
                                CheckpointMarking{{{0, 1, 1, 2}, {0, 3}}},
                                CheckpointMarking{{{0, 5}, {0, 3}}},
                                CheckpointMarking{{{0, 2}}}})
    EXPECT_THROW(find_useless_checkpoints(sm, bad), BadMarking);
}

TEST(Checkpoints, ZigzagLeavesOneUseless) {
  StateModel sm = state_fixture("zigzag.state.json");
  CheckpointMarking marks = io::marks_from_json(fixture("zigzag.marks.json"));
  for (auto engine : {CheckpointEngine::Fast, CheckpointEngine::Oracle,
                      CheckpointEngine::Both}) {
    CheckpointReport r = find_useless_checkpoints(sm, marks, engine);
    EXPECT_EQ(r.useless(), (Ids{"1.1"})) << to_string(engine);
    EXPECT_TRUE(r.engines_agree);
    for (const auto &v : r.verdicts)
      if (v.useful) {
        ASSERT_EQ(v.witness.size(), 2u);
        EXPECT_NE(std::find(v.witness.begin(), v.witness.end(), v.id),
                  v.witness.end());
      }
  }
  CheckpointReport r =
      find_useless_checkpoints(sm, marks, CheckpointEngine::Both);
  EXPECT_EQ(r.verdicts[1].id, "1.1");
  EXPECT_EQ(r.verdicts[1].fast_useful, false);
  EXPECT_EQ(r.verdicts[1].oracle_useful, false);
}

TEST(Checkpoints, NothingUselessWithoutMessages) {
  std::vector<std::pair<std::string, std::string>> rel{
      {"1.0", "1.1"}, {"1.1", "1.2"}, {"2.0", "2.1"}};
  Poset p = Poset::build({"1.0", "1.1", "1.2", "2.0", "2.1"}, rel);
  StateModel sm = StateModel::build(p, ChainPartition{{{0, 1, 2}, {3, 4}}});
  CheckpointMarking all{{{0, 1, 2}, {0, 1}}};
  EXPECT_TRUE(
      find_useless_checkpoints(sm, all, CheckpointEngine::Both).useless().empty());
}

TEST(Checkpoints, FullMarkingOfGoodModel) {
  StateModel sm = state_fixture("message-run.state.json");
  CheckpointMarking all{{{0, 1, 2, 3}, {0, 1, 2, 3}}};
  CheckpointReport r = find_useless_checkpoints(sm, all, CheckpointEngine::Both);
  EXPECT_TRUE(r.useless().empty());
  EXPECT_TRUE(r.engines_agree);
}

class AnalysisRandom : public ::testing::TestWithParam<int> {};

TEST_P(AnalysisRandom, DetectionMatchesBruteFiltering) {
  testing::Rng rng(static_cast<std::uint64_t>(GetParam()) * 65537);
  std::vector<PredicatePtr> preds{
      pred::sum("permits", Comparison::Less, 3),
      pred::count("waiting", Comparison::GreaterEqual, 2),
      pred::any_of({pred::every("at_barrier", Comparison::Equal, true),
                    pred::position(1, Comparison::Greater, 1)}),
      pred::negate(pred::attr(1, "permits", Comparison::NotEqual, 1.0))};
  for (int round = 0; round < 20; ++round) {
    EventModel m = testing::random_asc_model(rng, 3, 3, 0.4);
    StateModel sm = testing::with_random_attrs(rng, es_transform(m));
    for (const auto &b : preds) {
      std::set<Ids> expected;
      for (testing::Mask w : testing::width_antichain_masks(sm.poset())) {
        std::vector<ElementIndex> cut(3);
        for (ElementIndex x = 0; x < sm.poset().size(); ++x)
          if (w >> x & 1)
            cut[static_cast<std::size_t>(sm.chain_of(x) - 1)] = x;
        if (evaluate_predicate(*b, sm, cut))
          expected.insert(testing::mask_ids(sm.poset(), w));
      }
      ASSERT_EQ(cut_ids(sm, detect_width_predicate(sm, *b)), expected);
    }
  }
}

TEST_P(AnalysisRandom, EnginesAgreeWithOracle) {
  testing::Rng rng(static_cast<std::uint64_t>(GetParam()) * 1009);
  int useless = 0;
  for (int round = 0; round < 80; ++round) {
    testing::EventModelShape shape{2 + round % 3, 5, 0.45,
                                   round % 4 ? 0.0 : 0.1};
    StateModel sm = es_transform(testing::random_event_model(rng, shape));
    CheckpointMarking marks = testing::random_marking(rng, sm, 4);
    CheckpointReport r =
        find_useless_checkpoints(sm, marks, CheckpointEngine::Both);
    ASSERT_TRUE(r.engines_agree);
    const Poset &ip = r.induced.poset();
    for (const auto &v : r.verdicts) {
      ElementIndex s = ip.index_of(v.id);
      ASSERT_EQ(v.useful, testing::brute_useful(r.induced, s)) << v.id;
      useless += !v.useful;
      if (!v.useful)
        continue;
      // The witness re-validates: one per chain, pairwise concurrent.
      ASSERT_EQ(v.witness.size(), static_cast<std::size_t>(r.induced.chains()));
      std::vector<ElementIndex> w;
      for (std::size_t c = 0; c < v.witness.size(); ++c) {
        ElementIndex x = ip.index_of(v.witness[c]);
        ASSERT_EQ(r.induced.chain_of(x), static_cast<int>(c) + 1);
        w.push_back(x);
      }
      ASSERT_TRUE(ip.is_antichain(w));
      ASSERT_NE(std::find(w.begin(), w.end(), s), w.end());
    }
  }
  EXPECT_GT(useless, 0);
}

TEST_P(AnalysisRandom, ArbitraryPosetsToo) {
  // Induced models need not be width-extensible; the engines must still
  // agree on chain-partitioned posets in general.
  testing::Rng rng(static_cast<std::uint64_t>(GetParam()) * 313);
  for (int round = 0; round < 100; ++round) {
    StateModel sm = testing::random_chain_poset(rng, 12, 4, 0.25);
    CheckpointMarking all;
    for (int i = 1; i <= sm.chains(); ++i) {
      std::vector<std::size_t> every;
      for (std::size_t k = 0; k <= sm.final_index(i); ++k)
        every.push_back(k);
      all.marks.push_back(every);
    }
    CheckpointReport r = find_useless_checkpoints(sm, all, CheckpointEngine::Both);
    ASSERT_TRUE(r.engines_agree);
    for (const auto &v : r.verdicts)
      ASSERT_EQ(v.useful,
                testing::brute_useful(sm, sm.poset().index_of(v.id)));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, AnalysisRandom, ::testing::Range(1, 6));

} // namespace
} // namespace pomodel
