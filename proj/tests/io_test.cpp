#include <pomodel/analysis.hpp>
#include <pomodel/error.hpp>
#include <pomodel/io.hpp>
#include <pomodel/transforms.hpp>

#include "support/fixtures.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

namespace pomodel {
namespace {

using io::json;
using testing::fixture;

TEST(Io, MalformedTextIsAParseError) {
  EXPECT_THROW(io::parse("{\"kind\": "), ParseError);
  EXPECT_THROW(io::read_file(std::string(POMODEL_FIXTURE_DIR) + "/malformed.json"),
               ParseError);
  EXPECT_THROW(io::read_file("/nonexistent/file.json"), ParseError);
}

TEST(Io, KindAndVersion) {
  EXPECT_EQ(io::kind_of(fixture("message-run.event.json")), io::Kind::Event);
  EXPECT_EQ(io::kind_of(fixture("stuck-pair.poset.json")), io::Kind::Poset);
  EXPECT_THROW(io::kind_of(io::parse(R"({"version": 1})")), SchemaError);
  EXPECT_THROW(io::kind_of(io::parse(R"({"kind": "blob", "version": 1})")),
               SchemaError);
  EXPECT_THROW(io::kind_of(io::parse(R"({"kind": "poset", "version": 2})")),
               SchemaError);
  EXPECT_THROW(io::expect_kind(fixture("message-run.event.json"), io::Kind::State),
               KindMismatch);
}

TEST(Io, UnknownFieldsAreRejected) {
  json doc = fixture("message-run.state.json");
  doc["colour"] = "blue";
  EXPECT_THROW(io::state_from_json(doc), SchemaError);
  json ev = fixture("message-run.event.json");
  ev["events"][0]["note"] = 1;
  EXPECT_THROW(io::event_from_json(ev), SchemaError);
  json pred = fixture("late.pred.json");
  pred["predicate"]["args"][0]["extra"] = true;
  EXPECT_THROW(io::predicate_from_json(pred), SchemaError);
}

TEST(Io, WrongTypesAreSchemaErrors) {
  json doc = fixture("message-run.state.json");
  doc["elements"] = "a0";
  EXPECT_THROW(io::state_from_json(doc), SchemaError);
  json ev = fixture("message-run.event.json");
  ev["events"][0]["slots"][0]["idx"] = "one";
  EXPECT_THROW(io::event_from_json(ev), SchemaError);
  json pred = fixture("late.pred.json");
  pred["predicate"]["op"] = "xor";
  EXPECT_THROW(io::predicate_from_json(pred), SchemaError);
  pred = fixture("late.pred.json");
  pred["predicate"]["args"][0]["cmp"] = "=~";
  EXPECT_THROW(io::predicate_from_json(pred), SchemaError);
}

TEST(Io, SemanticErrorsPassThrough) {
  EXPECT_THROW(io::event_from_json(fixture("invalid-concurrent.event.json")),
               NotTotallyOrdered);
  json doc = fixture("message-run.state.json");
  doc["relations"].push_back({"c'", "a0"});
  EXPECT_THROW(io::state_from_json(doc), CycleError);
}

TEST(Io, EdgeTagsAreAccepted) {
  EventModel m = io::event_from_json(fixture("message-run.event.json"));
  EXPECT_TRUE(m.poset().less(m.poset().index_of("b"), m.poset().index_of("f")));
}

TEST(Io, PosetWithoutChains) {
  io::PosetDocument d = io::poset_from_json(fixture("stuck-pair.poset.json"));
  EXPECT_EQ(d.poset.size(), 9u);
  json out = io::to_json(d.poset);
  EXPECT_EQ(io::poset_from_json(out).poset, d.poset);
}

TEST(Io, StateRoundTripIsCanonical) {
  for (const char *name : {"message-run.state.json", "stuck-state.state.json",
                           "barrier.state.json", "sync.state.json"}) {
    StateModel sm = testing::state_fixture(name);
    json once = io::to_json(sm);
    StateModel back = io::state_from_json(once);
    EXPECT_TRUE(same_state_order(sm, back)) << name;
    EXPECT_EQ(io::dump(io::to_json(back)), io::dump(once)) << name;
  }
  StateModel sync = testing::state_fixture("sync.state.json");
  StateModel back = io::state_from_json(io::to_json(sync));
  ASSERT_NE(back.attrs(back.poset().index_of("2.2")), nullptr);
  EXPECT_EQ(back.attrs(back.poset().index_of("2.2"))->at("permits"),
            AttrValue(1.0));
}

TEST(Io, EventRoundTripIsCanonical) {
  for (const char *name : {"message-run.event.json", "barrier.event.json",
                           "zigzag.event.json"}) {
    EventModel m = testing::event_fixture(name);
    json once = io::to_json(m);
    EventModel back = io::event_from_json(once);
    EXPECT_TRUE(equivalent(m, back)) << name;
    EXPECT_EQ(io::dump(io::to_json(back)), io::dump(once)) << name;
  }
  testing::Rng rng(3);
  for (int round = 0; round < 30; ++round) {
    EventModel m = testing::random_event_model(
        rng, testing::EventModelShape{3, 4, 0.4, 0.15});
    EventModel back = io::event_from_json(io::to_json(m),
                                          EventModelOptions{true});
    ASSERT_TRUE(equivalent(m, back));
  }
}

TEST(Io, PredicateAndMarksRoundTrip) {
  for (const char *name : {"late.pred.json", "barrier.pred.json",
                           "deadlock.pred.json", "permits.pred.json"}) {
    json doc = fixture(name);
    PredicatePtr p = io::predicate_from_json(doc);
    EXPECT_EQ(io::predicate_to_json(*p), doc["predicate"]) << name;
  }
  json marks = fixture("zigzag.marks.json");
  EXPECT_EQ(io::to_json(io::marks_from_json(marks)), marks);
}

TEST(Io, ReportsCarryWitnesses) {
  StateModel sm = testing::state_fixture("stuck-pair.state.json");
  PropertySelection we_only{false, false, false, false, true, false};
  json r = io::to_json(check_properties(sm, we_only));
  EXPECT_EQ(r["we"]["holds"], false);
  EXPECT_EQ(r["we"]["witness"], json::array({"b", "i"}));
  EXPECT_FALSE(r.contains("psi"));

  SETransformOutcome out =
      se_transform(testing::state_fixture("stuck-state.state.json"));
  json inv = io::to_json(*out.invalidity);
  EXPECT_EQ(inv["kind"], "invalidity");
  EXPECT_EQ(inv["components"][0]["collisions"][0]["chain"], 1);

  NotWidthExtensible e("stuck", {"b", "i"});
  json err = io::error_to_json(e);
  EXPECT_EQ(err["error"], "NotWidthExtensible");
  EXPECT_EQ(err["witness"], json::array({"b", "i"}));
}

} // namespace
} // namespace pomodel
