#include <pomodel/transforms.hpp>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

namespace pomodel {
namespace {

using testing::event_fixture;
using testing::Ids;
using testing::state_fixture;

bool holds_all(const StateModel &sm) {
  PropertyReport r = check_properties(sm);
  return r.omega1->holds && r.omega2->holds && r.omega3->holds &&
         r.psi->holds && r.width_extensible->holds &&
         r.interleaving_consistent->holds;
}

TEST(Transforms, MessageBecomesStateOrder) {
  StateModel sm = es_transform(event_fixture("one-message.event.json"));
  EXPECT_TRUE(same_state_order(sm, state_fixture("one-message.state.json")));
  EXPECT_EQ(sm.poset().id(sm.state(2, 3)), "2.3");
  EXPECT_TRUE(holds_all(sm));
}

TEST(Transforms, SharedEventOrdersBothWays) {
  StateModel sm = es_transform(event_fixture("barrier.event.json"));
  EXPECT_TRUE(same_state_order(sm, state_fixture("barrier.state.json")));
  EXPECT_FALSE(same_state_order(sm, state_fixture("one-message.state.json")));
}

TEST(Transforms, EmptyModel) {
  EventModel m = EventModel::build(Poset::build({}, {}), 0, {});
  StateModel sm = es_transform(m);
  EXPECT_EQ(sm.poset().size(), 0u);
  EXPECT_TRUE(se_transform(sm).ok());
}

TEST(Transforms, CrossedStatesCollapseIntoSharedEvent) {
  SETransformOutcome out = se_transform(state_fixture("barrier.state.json"));
  ASSERT_TRUE(out.ok());
  EXPECT_TRUE(equivalent(*out.model, event_fixture("barrier.event.json")));
  const Poset &p = out.model->poset();
  EXPECT_EQ(p.size(), 5u);
  EXPECT_EQ(p.id(out.model->event_at(1, 2)), "shared(1.2,2.2)");
  EXPECT_TRUE(out.graph.has_edge({1, 2}, {2, 2}));
  EXPECT_TRUE(out.graph.has_edge({2, 2}, {1, 2}));
}

TEST(Transforms, PlainEventGraph) {
  SETransformOutcome out = se_transform(state_fixture("one-message.state.json"));
  ASSERT_TRUE(out.ok());
  EXPECT_TRUE(equivalent(*out.model, event_fixture("one-message.event.json")));
  EXPECT_TRUE(out.graph.has_edge({1, 2}, {2, 2}));
  EXPECT_FALSE(out.graph.has_edge({2, 2}, {1, 2}));
  EXPECT_TRUE(out.graph.has_edge({1, 1}, {1, 2}));
  EXPECT_EQ(out.graph.nodes.size(), 6u);
  EXPECT_EQ(out.graph.components.size(), 6u);
}

TEST(Transforms, CollisionIsReported) {
  SETransformOutcome out = se_transform(state_fixture("stuck-state.state.json"));
  ASSERT_FALSE(out.ok());
  ASSERT_EQ(out.invalidity->components.size(), 1u);
  const OffendingComponent &c = out.invalidity->components[0];
  EXPECT_EQ(c.members, (std::vector<Slot>{{1, 1}, {1, 2}, {2, 1}}));
  ASSERT_EQ(c.collisions.size(), 1u);
  EXPECT_EQ(c.collisions[0].first, 1);
  EXPECT_EQ(c.collisions[0].second, (std::vector<Slot>{{1, 1}, {1, 2}}));
}

TEST(Transforms, RelabelingDoesNotMatter) {
  SETransformOutcome a = se_transform(state_fixture("stuck-state.state.json"));
  SETransformOutcome b =
      se_transform(state_fixture("stuck-state-numbered.state.json"));
  ASSERT_FALSE(b.ok());
  EXPECT_EQ(a.invalidity->components[0].members,
            b.invalidity->components[0].members);
}

class TransformsRandom : public ::testing::TestWithParam<int> {};

TEST_P(TransformsRandom, EventModelsSurviveTheRoundTrip) {
  testing::Rng rng(static_cast<std::uint64_t>(GetParam()) * 131);
  for (int round = 0; round < 40; ++round) {
    testing::EventModelShape shape{1 + round % 4, 4, 0.4,
                                   round % 3 ? 0.15 : 0.0};
    EventModel m = testing::random_event_model(rng, shape);
    ASSERT_TRUE(roundtrip_es_se(m));
    StateModel sm = es_transform(m);
    ASSERT_TRUE(check_omega1(sm).holds);
    ASSERT_TRUE(check_omega2(sm).holds);
    ASSERT_TRUE(check_omega3(sm).holds);
    if (m.is_asc()) {
      ASSERT_TRUE(check_psi(sm).holds);
      ASSERT_TRUE(check_interleaving_consistent(sm.poset()).holds);
    }
    if (sm.poset().size() <= 20) {
      ASSERT_EQ(testing::brute_width(sm.poset()),
                static_cast<std::size_t>(sm.chains()));
      ASSERT_TRUE(testing::brute_width_extensible(sm.poset()));
      ASSERT_EQ(testing::downset_masks(m.poset()).size(),
                testing::width_antichain_masks(sm.poset()).size());
    }
  }
}

TEST_P(TransformsRandom, ExtensibleStateModelsSurviveTheRoundTrip) {
  testing::Rng rng(static_cast<std::uint64_t>(GetParam()) * 577);
  int good = 0, bad = 0;
  for (int round = 0; round < 200; ++round) {
    StateModel sm = testing::random_chain_poset(rng, 10, 3, 0.15);
    const Poset &p = sm.poset();
    bool usable = testing::brute_width(p) ==
                      static_cast<std::size_t>(sm.chains()) &&
                  testing::brute_width_extensible(p);
    SETransformOutcome out = se_transform(sm);
    ASSERT_NE(out.ok(), out.invalidity.has_value());
    if (!usable) {
      if (!out.ok()) {
        ++bad;
        for (const auto &c : out.invalidity->components) {
          ASSERT_FALSE(c.collisions.empty());
          for (const auto &[chain, members] : c.collisions) {
            ASSERT_GE(members.size(), 2u);
            for (const Slot &s : members)
              ASSERT_EQ(s.proc, chain);
          }
        }
      }
      continue;
    }
    ++good;
    ASSERT_TRUE(out.ok());
    ASSERT_TRUE(same_state_order(es_transform(*out.model), sm));
  }
  EXPECT_GT(good, 0);
  EXPECT_GT(bad, 0);
}

INSTANTIATE_TEST_SUITE_P(Seeds, TransformsRandom, ::testing::Range(1, 6));

} // namespace
} // namespace pomodel
