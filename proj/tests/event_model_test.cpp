#include <pomodel/error.hpp>
#include <pomodel/event_model.hpp>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

namespace pomodel {
namespace {

using testing::event_fixture;

EventModel two_events_on(int proc_x, int idx_x, int proc_y, int idx_y,
                         int processes,
                         std::vector<std::pair<std::string, std::string>> rel,
                         EventModelOptions options = {}) {
  Poset p = Poset::build({"x", "y"}, rel);
  std::map<std::string, SlotSet> labels{{"x", {{proc_x, idx_x}}},
                                        {"y", {{proc_y, idx_y}}}};
  return EventModel::build(std::move(p), processes, labels, options);
}

TEST(EventModel, SimpleMessageRun) {
  EventModel m = event_fixture("message-run.event.json");
  EXPECT_EQ(m.processes(), 2);
  EXPECT_EQ(m.length(1), 3u);
  EXPECT_EQ(m.length(2), 3u);
  EXPECT_EQ(m.poset().id(m.event_at(1, 2)), "b");
  EXPECT_EQ(m.poset().id(m.event_at(2, 2)), "f");
  EXPECT_TRUE(m.is_asc());
}

TEST(EventModel, BarrierIsOneSharedEvent) {
  EventModel m = event_fixture("barrier.event.json");
  ElementIndex barrier = m.event_at(1, 2);
  EXPECT_EQ(barrier, m.event_at(2, 2));
  EXPECT_EQ(m.slots(barrier).size(), 2u);
  EXPECT_FALSE(m.is_asc());
}

TEST(EventModel, ConcurrentEventsOnOneProcess) {
  EXPECT_THROW(two_events_on(1, 1, 1, 2, 1, {}), NotTotallyOrdered);
  EXPECT_THROW(two_events_on(1, 1, 1, 1, 1, {}), NotTotallyOrdered);
  // Ordered against their indices.
  EXPECT_THROW(two_events_on(1, 1, 1, 2, 1, {{"y", "x"}}), NotTotallyOrdered);
}

TEST(EventModel, IndexGapAndEmptyProcess) {
  EXPECT_THROW(two_events_on(1, 1, 1, 3, 1, {{"x", "y"}}), IndexGap);
  EXPECT_THROW(two_events_on(1, 1, 1, 2, 2, {{"x", "y"}}), EmptyProcess);
  EventModel m = two_events_on(1, 1, 1, 2, 2, {{"x", "y"}},
                               EventModelOptions{.allow_empty_process = true});
  EXPECT_EQ(m.length(2), 0u);
}

TEST(EventModel, BadLabels) {
  Poset p = Poset::build({"x"}, {});
  EXPECT_THROW(EventModel::build(p, 1, {{"x", {}}}), InvalidLabel);
  EXPECT_THROW(EventModel::build(p, 1, {{"x", {{2, 1}}}}), InvalidLabel);
  EXPECT_THROW(EventModel::build(p, 2, {{"x", {{1, 1}, {1, 2}}}}),
               InvalidLabel);
  EXPECT_THROW(EventModel::build(p, 1, {}), InvalidLabel);
}

TEST(EventModel, EmptyModelIsAsc) {
  EventModel m = EventModel::build(Poset::build({}, {}), 0, {});
  EXPECT_TRUE(m.is_asc());
  EXPECT_TRUE(m.is_consistent_cut(std::vector<std::string>{}));
}

TEST(EventModel, ConsistentCuts) {
  EventModel m = event_fixture("message-run.event.json");
  EXPECT_TRUE(m.is_consistent_cut({"a", "b", "e", "f"}));
  EXPECT_FALSE(m.is_consistent_cut({"f"}));
  EXPECT_TRUE(m.is_consistent_cut(std::vector<std::string>{}));
  EXPECT_THROW(m.is_consistent_cut({"zz"}), UnknownElement);
}

TEST(EventModel, EquivalenceIgnoresNames) {
  EventModel a = event_fixture("message-run.event.json");
  EventModel b = event_fixture("one-message.event.json");
  EXPECT_TRUE(equivalent(a, b));
  EXPECT_FALSE(equivalent(a, event_fixture("barrier.event.json")));
}

TEST(EventModel, RandomModelsAreValidAndCutsAreDownsets) {
  testing::Rng rng(7);
  for (int round = 0; round < 50; ++round) {
    testing::EventModelShape shape{3, 3, 0.4, round % 2 ? 0.2 : 0.0};
    EventModel m = testing::random_event_model(rng, shape);
    EXPECT_EQ(m.is_asc(), [&] {
      for (ElementIndex e = 0; e < m.poset().size(); ++e)
        if (m.slots(e).size() != 1)
          return false;
      return true;
    }());
    for (testing::Mask mask : testing::downset_masks(m.poset())) {
      Bitset cut(m.poset().size());
      for (std::size_t x = 0; x < m.poset().size(); ++x)
        if (mask >> x & 1)
          cut.set(x);
      EXPECT_TRUE(m.is_consistent_cut(cut));
    }
  }
}

} // namespace
} // namespace pomodel
