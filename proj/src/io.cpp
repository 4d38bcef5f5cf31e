#include <pomodel/error.hpp>
#include <pomodel/io.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <sstream>

namespace pomodel::io {

const char *to_string(Kind k) {
  switch (k) {
  case Kind::Poset:
    return "poset";
  case Kind::State:
    return "state";
  case Kind::Event:
    return "event";
  case Kind::Marks:
    return "marks";
  case Kind::Predicate:
    return "predicate";
  }
  return "?";
}

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    throw ParseError(e.what());
  }
}

json read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

namespace {

void check_fields(const json &obj, std::initializer_list<const char *> required,
                  std::initializer_list<const char *> optional,
                  const std::string &where) {
  if (!obj.is_object())
    throw SchemaError(where + ": expected an object");
  for (const char *key : required)
    if (!obj.contains(key))
      throw SchemaError(where + ": missing field '" + key + "'");
  for (const auto &[key, value] : obj.items()) {
    auto known = [&](std::initializer_list<const char *> names) {
      return std::any_of(names.begin(), names.end(),
                         [&](const char *n) { return key == n; });
    };
    if (!known(required) && !known(optional))
      throw SchemaError(where + ": unknown field '" + key + "'");
  }
}

const std::string &as_string(const json &v, const std::string &where) {
  if (!v.is_string())
    throw SchemaError(where + ": expected a string");
  return v.get_ref<const std::string &>();
}

const json &as_array(const json &v, const std::string &where) {
  if (!v.is_array())
    throw SchemaError(where + ": expected an array");
  return v;
}

long long as_integer(const json &v, const std::string &where) {
  if (!v.is_number_integer())
    throw SchemaError(where + ": expected an integer");
  return v.get<long long>();
}

std::vector<std::string> string_list(const json &v, const std::string &where) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < as_array(v, where).size(); ++k)
    out.push_back(as_string(v[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

std::vector<std::pair<std::string, std::string>>
pair_list(const json &v, const std::string &where, bool allow_tag) {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t k = 0; k < as_array(v, where).size(); ++k) {
    const std::string at = where + "[" + std::to_string(k) + "]";
    const json &pair = as_array(v[k], at);
    const bool tagged = allow_tag && pair.size() == 3;
    if (pair.size() != 2 && !tagged)
      throw SchemaError(at + ": expected [from, to]" +
                        std::string(allow_tag ? " or [from, to, tag]" : ""));
    if (tagged)
      as_string(pair[2], at + "[2]");
    out.emplace_back(as_string(pair[0], at + "[0]"),
                     as_string(pair[1], at + "[1]"));
  }
  return out;
}

Kind header(const json &doc) {
  if (!doc.is_object())
    throw SchemaError("document: expected an object");
  if (!doc.contains("kind"))
    throw SchemaError("document: missing field 'kind'");
  if (!doc.contains("version"))
    throw SchemaError("document: missing field 'version'");
  const std::string &kind = as_string(doc["kind"], "kind");
  if (as_integer(doc["version"], "version") != kSchemaVersion)
    throw SchemaError("version: only version " +
                      std::to_string(kSchemaVersion) + " is supported");
  for (Kind k : {Kind::Poset, Kind::State, Kind::Event, Kind::Marks,
                 Kind::Predicate})
    if (kind == to_string(k))
      return k;
  throw SchemaError("kind: unknown kind '" + kind + "'");
}

ChainPartition chains_from_json(const Poset &p, const json &v) {
  ChainPartition cp;
  for (std::size_t c = 0; c < as_array(v, "chains").size(); ++c) {
    std::vector<ElementIndex> chain;
    for (const auto &id :
         string_list(v[c], "chains[" + std::to_string(c) + "]"))
      chain.push_back(p.index_of(id));
    cp.chains.push_back(std::move(chain));
  }
  validate_chain_partition(p, cp);
  return cp;
}

Poset poset_from_fields(const json &doc) {
  std::vector<std::string> elements = string_list(doc["elements"], "elements");
  auto relations = doc.contains("relations")
                       ? pair_list(doc["relations"], "relations", false)
                       : std::vector<std::pair<std::string, std::string>>{};
  return Poset::build(std::move(elements), relations);
}

AttrValue attr_from_json(const json &v, const std::string &where) {
  if (v.is_boolean())
    return v.get<bool>();
  if (v.is_number())
    return v.get<double>();
  if (v.is_string())
    return v.get<std::string>();
  throw SchemaError(where + ": attribute values are booleans, numbers or "
                            "strings");
}

json attr_to_json(const AttrValue &v) {
  return std::visit([](const auto &x) { return json(x); }, v);
}

json sorted_ids(const Poset &p, std::vector<ElementIndex> members) {
  return ids_of(p, members);
}

json covers_json(const Poset &p,
                 const std::function<bool(ElementIndex, ElementIndex)> &keep) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto &[a, b] : p.covers())
    if (keep(a, b))
      pairs.emplace_back(p.id(a), p.id(b));
  std::sort(pairs.begin(), pairs.end());
  json out = json::array();
  for (const auto &[a, b] : pairs)
    out.push_back({a, b});
  return out;
}

json chain_json(const Poset &p, const ChainPartition &cp) {
  json out = json::array();
  for (const auto &chain : cp.chains) {
    json c = json::array();
    for (ElementIndex e : chain)
      c.push_back(p.id(e));
    out.push_back(std::move(c));
  }
  return out;
}

} // namespace

Kind kind_of(const json &doc) { return header(doc); }

void expect_kind(const json &doc, Kind want) {
  Kind got = header(doc);
  if (got != want)
    throw KindMismatch(std::string("expected a '") + to_string(want) +
                       "' document, got '" + to_string(got) + "'");
}

PosetDocument poset_from_json(const json &doc) {
  expect_kind(doc, Kind::Poset);
  check_fields(doc, {"kind", "version", "elements"}, {"relations", "chains"},
               "poset");
  PosetDocument out{poset_from_fields(doc), std::nullopt};
  if (doc.contains("chains"))
    out.chains = chains_from_json(out.poset, doc["chains"]);
  return out;
}

StateModel state_from_json(const json &doc) {
  expect_kind(doc, Kind::State);
  check_fields(doc, {"kind", "version", "elements", "chains"},
               {"relations", "attrs"}, "state");
  Poset p = poset_from_fields(doc);
  ChainPartition cp = chains_from_json(p, doc["chains"]);
  std::map<std::string, AttrMap> attrs;
  if (doc.contains("attrs")) {
    const json &all = doc["attrs"];
    if (!all.is_object())
      throw SchemaError("attrs: expected an object");
    for (const auto &[id, map] : all.items()) {
      const std::string where = "attrs." + id;
      if (!p.find(id))
        throw UnknownElement("attributes given for unknown state '" + id + "'");
      if (!map.is_object())
        throw SchemaError(where + ": expected an object");
      AttrMap values;
      for (const auto &[name, value] : map.items())
        values.emplace(name, attr_from_json(value, where + "." + name));
      attrs.emplace(id, std::move(values));
    }
  }
  return StateModel::build(std::move(p), std::move(cp), std::move(attrs));
}

EventModel event_from_json(const json &doc, EventModelOptions options) {
  expect_kind(doc, Kind::Event);
  check_fields(doc, {"kind", "version", "n", "events"}, {"edges"}, "event");
  const long long n = as_integer(doc["n"], "n");
  if (n < 0)
    throw SchemaError("n: must be nonnegative");

  std::vector<std::string> ids;
  std::map<std::string, SlotSet> labels;
  // (proc, idx) -> events claiming it; consecutive indices are ordered.
  std::map<Slot, std::vector<std::string>> at;
  const json &events = as_array(doc["events"], "events");
  for (std::size_t k = 0; k < events.size(); ++k) {
    const std::string where = "events[" + std::to_string(k) + "]";
    check_fields(events[k], {"id", "slots"}, {}, where);
    const std::string &id = as_string(events[k]["id"], where + ".id");
    SlotSet slots;
    const json &js = as_array(events[k]["slots"], where + ".slots");
    for (std::size_t s = 0; s < js.size(); ++s) {
      const std::string sw = where + ".slots[" + std::to_string(s) + "]";
      check_fields(js[s], {"proc", "idx"}, {}, sw);
      Slot slot{static_cast<int>(as_integer(js[s]["proc"], sw + ".proc")),
                static_cast<int>(as_integer(js[s]["idx"], sw + ".idx"))};
      slots.push_back(slot);
      at[slot].push_back(id);
    }
    std::sort(slots.begin(), slots.end());
    ids.push_back(id);
    labels[id] = std::move(slots);
  }

  std::vector<std::pair<std::string, std::string>> edges;
  if (doc.contains("edges"))
    edges = pair_list(doc["edges"], "edges", true);
  for (const auto &[slot, here] : at) {
    auto next = at.find(Slot{slot.proc, slot.idx + 1});
    if (next == at.end())
      continue;
    for (const auto &a : here)
      for (const auto &b : next->second)
        if (a != b)
          edges.emplace_back(a, b);
  }
  Poset p = Poset::build(std::move(ids), edges);
  return EventModel::build(std::move(p), static_cast<int>(n), labels, options);
}

CheckpointMarking marks_from_json(const json &doc) {
  expect_kind(doc, Kind::Marks);
  check_fields(doc, {"kind", "version", "marks"}, {}, "marks");
  CheckpointMarking out;
  const json &all = as_array(doc["marks"], "marks");
  for (std::size_t i = 0; i < all.size(); ++i) {
    const std::string where = "marks[" + std::to_string(i) + "]";
    std::vector<std::size_t> chain;
    for (std::size_t k = 0; k < as_array(all[i], where).size(); ++k) {
      long long v = as_integer(all[i][k], where + "[" + std::to_string(k) + "]");
      if (v < 0)
        throw SchemaError(where + ": indices are nonnegative");
      chain.push_back(static_cast<std::size_t>(v));
    }
    out.marks.push_back(std::move(chain));
  }
  return out;
}

PredicatePtr predicate_node_from_json(const json &node) {
  if (!node.is_object() || !node.contains("op"))
    throw SchemaError("predicate: each node is an object with an 'op'");
  const std::string &op = as_string(node["op"], "predicate.op");
  const std::string where = "predicate '" + op + "'";
  auto comparison = [&]() {
    auto c = parse_comparison(as_string(node["cmp"], where + ".cmp"));
    if (!c)
      throw SchemaError(where + ".cmp: expected one of < <= == != >= >");
    return *c;
  };
  auto number = [&]() {
    if (!node["value"].is_number())
      throw SchemaError(where + ".value: expected a number");
    return node["value"].get<double>();
  };
  auto name = [&]() { return as_string(node["name"], where + ".name"); };
  auto proc = [&]() {
    return static_cast<int>(as_integer(node["proc"], where + ".proc"));
  };
  auto args = [&]() {
    std::vector<PredicatePtr> out;
    for (const auto &a : as_array(node["args"], where + ".args"))
      out.push_back(predicate_node_from_json(a));
    return out;
  };

  if (op == "true" || op == "false") {
    check_fields(node, {"op"}, {}, where);
    return op == "true" ? pred::truth() : pred::falsity();
  }
  if (op == "and" || op == "or") {
    check_fields(node, {"op", "args"}, {}, where);
    return op == "and" ? pred::all_of(args()) : pred::any_of(args());
  }
  if (op == "not") {
    check_fields(node, {"op", "args"}, {}, where);
    auto a = args();
    if (a.size() != 1)
      throw SchemaError(where + ".args: expected exactly one operand");
    return pred::negate(a.front());
  }
  if (op == "position") {
    check_fields(node, {"op", "proc", "cmp", "value"}, {}, where);
    long long v = as_integer(node["value"], where + ".value");
    if (v < 0)
      throw SchemaError(where + ".value: must be nonnegative");
    return pred::position(proc(), comparison(), static_cast<std::size_t>(v));
  }
  if (op == "attr") {
    check_fields(node, {"op", "proc", "name", "cmp", "value"}, {}, where);
    return pred::attr(proc(), name(), comparison(),
                      attr_from_json(node["value"], where + ".value"));
  }
  if (op == "all") {
    check_fields(node, {"op", "name", "cmp", "value"}, {}, where);
    return pred::every(name(), comparison(),
                       attr_from_json(node["value"], where + ".value"));
  }
  if (op == "sum" || op == "count") {
    check_fields(node, {"op", "name", "cmp", "value"}, {}, where);
    return op == "sum" ? pred::sum(name(), comparison(), number())
                       : pred::count(name(), comparison(), number());
  }
  throw SchemaError("predicate: unknown op '" + op + "'");
}

PredicatePtr predicate_from_json(const json &doc) {
  expect_kind(doc, Kind::Predicate);
  check_fields(doc, {"kind", "version", "predicate"}, {}, "predicate");
  return predicate_node_from_json(doc["predicate"]);
}

json to_json(const Poset &p, const std::optional<ChainPartition> &chains) {
  json out = {{"kind", "poset"},
              {"version", kSchemaVersion},
              {"elements", sorted_ids(p, [&] {
                 std::vector<ElementIndex> all(p.size());
                 for (ElementIndex e = 0; e < p.size(); ++e)
                   all[e] = e;
                 return all;
               }())},
              {"relations", covers_json(p, [](auto, auto) { return true; })}};
  if (chains)
    out["chains"] = chain_json(p, *chains);
  return out;
}

json to_json(const StateModel &sm) {
  json out = to_json(sm.poset(), sm.partition());
  out["kind"] = "state";
  if (!sm.all_attrs().empty()) {
    json attrs = json::object();
    for (const auto &[id, map] : sm.all_attrs()) {
      json values = json::object();
      for (const auto &[name, value] : map)
        values[name] = attr_to_json(value);
      attrs[id] = std::move(values);
    }
    out["attrs"] = std::move(attrs);
  }
  return out;
}

json to_json(const EventModel &m) {
  const Poset &p = m.poset();
  std::vector<ElementIndex> order(p.size());
  for (ElementIndex e = 0; e < p.size(); ++e)
    order[e] = e;
  std::sort(order.begin(), order.end(),
            [&](ElementIndex a, ElementIndex b) { return p.id(a) < p.id(b); });
  json events = json::array();
  for (ElementIndex e : order) {
    json slots = json::array();
    for (const Slot &s : m.slots(e))
      slots.push_back({{"idx", s.idx}, {"proc", s.proc}});
    events.push_back({{"id", p.id(e)}, {"slots", std::move(slots)}});
  }
  // Same-process covers are implied by the indices.
  auto cross = [&](ElementIndex a, ElementIndex b) {
    for (const Slot &sa : m.slots(a))
      for (const Slot &sb : m.slots(b))
        if (sa.proc == sb.proc)
          return false;
    return true;
  };
  return {{"kind", "event"},
          {"version", kSchemaVersion},
          {"n", m.processes()},
          {"events", std::move(events)},
          {"edges", covers_json(p, cross)}};
}

json to_json(const CheckpointMarking &marks) {
  return {{"kind", "marks"}, {"version", kSchemaVersion}, {"marks", marks.marks}};
}

json predicate_to_json(const PredicateNode &node) {
  using Op = PredicateNode::Op;
  auto args = [&] {
    json out = json::array();
    for (const auto &c : node.children)
      out.push_back(predicate_to_json(*c));
    return out;
  };
  switch (node.op) {
  case Op::True:
    return {{"op", "true"}};
  case Op::False:
    return {{"op", "false"}};
  case Op::And:
    return {{"op", "and"}, {"args", args()}};
  case Op::Or:
    return {{"op", "or"}, {"args", args()}};
  case Op::Not:
    return {{"op", "not"}, {"args", args()}};
  case Op::Position:
    return {{"op", "position"},
            {"proc", node.proc},
            {"cmp", to_string(node.cmp)},
            {"value", static_cast<long long>(std::get<double>(node.value))}};
  case Op::Attr:
    return {{"op", "attr"},
            {"proc", node.proc},
            {"name", node.name},
            {"cmp", to_string(node.cmp)},
            {"value", attr_to_json(node.value)}};
  case Op::All:
  case Op::Sum:
  case Op::Count:
    return {{"op", node.op == Op::All   ? "all"
                   : node.op == Op::Sum ? "sum"
                                        : "count"},
            {"name", node.name},
            {"cmp", to_string(node.cmp)},
            {"value", attr_to_json(node.value)}};
  }
  return {};
}

json to_json(const Verdict &v) {
  return {{"holds", v.holds}, {"witness", v.witness}, {"detail", v.detail}};
}

json to_json(const PropertyReport &r) {
  json out = json::object();
  auto put = [&](const char *key, const std::optional<Verdict> &v) {
    if (v)
      out[key] = to_json(*v);
  };
  put("omega1", r.omega1);
  put("omega2", r.omega2);
  put("omega3", r.omega3);
  put("psi", r.psi);
  put("we", r.width_extensible);
  put("ic", r.interleaving_consistent);
  return out;
}

json to_json(const InvalidityReport &r) {
  json comps = json::array();
  for (const auto &c : r.components) {
    json members = json::array();
    for (const Slot &s : c.members)
      members.push_back(to_string(s));
    json collisions = json::array();
    for (const auto &[chain, slots] : c.collisions) {
      json ids = json::array();
      for (const Slot &s : slots)
        ids.push_back(to_string(s));
      collisions.push_back({{"chain", chain}, {"members", std::move(ids)}});
    }
    comps.push_back(
        {{"members", std::move(members)}, {"collisions", std::move(collisions)}});
  }
  return {{"kind", "invalidity"}, {"components", std::move(comps)}};
}

json to_json(const CheckpointReport &r) {
  json checkpoints = json::array();
  for (const auto &v : r.verdicts) {
    json entry = {{"id", v.id},
                  {"chain", v.chain},
                  {"index", v.state_index},
                  {"useful", v.useful},
                  {"witness", v.witness}};
    if (v.fast_useful)
      entry["fast"] = *v.fast_useful;
    if (v.oracle_useful)
      entry["oracle"] = *v.oracle_useful;
    checkpoints.push_back(std::move(entry));
  }
  const char *method = r.engine == CheckpointEngine::Fast     ? "cycle-based"
                       : r.engine == CheckpointEngine::Oracle ? "oracle"
                                                              : "both";
  json out = {{"kind", "checkpoint-report"},
              {"method", method},
              {"useless", r.useless()},
              {"checkpoints", std::move(checkpoints)},
              {"induced", to_json(r.induced)}};
  if (r.engine == CheckpointEngine::Both)
    out["engines_agree"] = r.engines_agree;
  return out;
}

json detection_to_json(const StateModel &sm, const DetectionResult &r,
                       DetectMode mode) {
  json cuts = json::array();
  for (const auto &cut : r.cuts)
    cuts.push_back(ids_of(sm.poset(), cut));
  json out = {{"kind", "predicate-result"},
              {"mode", mode == DetectMode::All     ? "all"
                       : mode == DetectMode::First ? "first"
                                                   : "count"},
              {"count", r.count},
              {"examined", r.examined},
              {"warnings", r.warnings}};
  if (mode != DetectMode::Count)
    out["cuts"] = std::move(cuts);
  if (mode == DetectMode::First)
    out["found"] = r.count > 0;
  return out;
}

json error_to_json(const Error &e) {
  json out = {{"error", e.kind()}, {"message", e.what()}};
  if (const auto *we = dynamic_cast<const NotWidthExtensible *>(&e))
    out["witness"] = we->witness();
  if (const auto *se = dynamic_cast<const SETransformFailed *>(&e))
    out["report"] = to_json(se->report());
  return out;
}

std::string dump(const json &doc) { return doc.dump(2) + "\n"; }

} // namespace pomodel::io
