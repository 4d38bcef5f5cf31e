#pragma once

#include <pomodel/analysis.hpp>
#include <pomodel/event_model.hpp>
#include <pomodel/lattice.hpp>
#include <pomodel/poset.hpp>
#include <pomodel/state_model.hpp>
#include <pomodel/transforms.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace pomodel::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

enum class Kind { Poset, State, Event, Marks, Predicate };
const char *to_string(Kind k);

/// Throws ParseError on malformed JSON.
json parse(std::string_view text);
/// Throws ParseError when the file cannot be read or parsed.
json read_file(const std::string &path);

/// Reads "kind" and checks "version". Throws SchemaError.
Kind kind_of(const json &doc);
/// Throws KindMismatch unless `doc` has kind `want`.
void expect_kind(const json &doc, Kind want);

struct PosetDocument {
  Poset poset;
  std::optional<ChainPartition> chains;
};

// Readers throw SchemaError for shape problems (missing or unknown fields,
// wrong types) and the library's own errors for semantic ones.
PosetDocument poset_from_json(const json &doc);
StateModel state_from_json(const json &doc);
EventModel event_from_json(const json &doc, EventModelOptions options = {});
CheckpointMarking marks_from_json(const json &doc);
PredicatePtr predicate_from_json(const json &doc);
PredicatePtr predicate_node_from_json(const json &node);

// Writers emit canonical documents: sorted keys, sorted element and
// relation lists, and only cover pairs as relations.
json to_json(const Poset &p, const std::optional<ChainPartition> &chains = {});
json to_json(const StateModel &sm);
json to_json(const EventModel &m);
json to_json(const CheckpointMarking &marks);
json predicate_to_json(const PredicateNode &node);

json to_json(const Verdict &v);
json to_json(const PropertyReport &r);
json to_json(const InvalidityReport &r);
json to_json(const CheckpointReport &r);
json detection_to_json(const StateModel &sm, const DetectionResult &r,
                       DetectMode mode);
json error_to_json(const Error &e);

/// Two-space indented text with a trailing newline.
std::string dump(const json &doc);

} // namespace pomodel::io
