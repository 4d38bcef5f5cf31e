// pomodel: validate, transform, check, enumerate and analyze partial-order
// models of concurrent computations. See docs/formats.md for file formats.

#include <pomodel/error.hpp>
#include <pomodel/io.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

using namespace pomodel;
using io::json;

enum Exit { kOk = 0, kSemantic = 2, kParse = 3, kUsage = 4, kGuard = 5 };

struct Options {
  bool allow_empty_process = false;

  std::string path;
  std::string direction;
  std::string properties = "omega1,omega2,omega3,psi,we,ic";
  std::string family;
  std::size_t max_cuts = 1'000'000;
  std::string model, pred, marks;
  bool first = false, count = false;
  std::string engine = "fast";
};

void emit(const json &doc) { std::cout << io::dump(doc) << std::flush; }

json summary(const io::json &doc, const Options &opt) {
  json out = {{"valid", true}};
  switch (io::kind_of(doc)) {
  case io::Kind::Poset: {
    auto pd = io::poset_from_json(doc);
    out["kind"] = "poset";
    out["elements"] = pd.poset.size();
    out["width"] = width(pd.poset).width;
    break;
  }
  case io::Kind::State: {
    StateModel sm = io::state_from_json(doc);
    out["kind"] = "state";
    out["states"] = sm.poset().size();
    out["chains"] = sm.chains();
    out["width"] = width(sm.poset()).width;
    break;
  }
  case io::Kind::Event: {
    EventModel m = io::event_from_json(
        doc, EventModelOptions{.allow_empty_process = opt.allow_empty_process});
    out["kind"] = "event";
    out["events"] = m.poset().size();
    out["processes"] = m.processes();
    out["asc"] = m.is_asc();
    break;
  }
  case io::Kind::Marks:
    io::marks_from_json(doc);
    out["kind"] = "marks";
    break;
  case io::Kind::Predicate:
    io::predicate_from_json(doc);
    out["kind"] = "predicate";
    break;
  }
  return out;
}

int cmd_validate(const Options &opt) {
  json doc = io::read_file(opt.path);
  try {
    emit(summary(doc, opt));
  } catch (const ParseError &) {
    throw;
  } catch (const SchemaError &) {
    throw;
  } catch (const Error &e) {
    json out = io::error_to_json(e);
    out["valid"] = false;
    emit(out);
    return kSemantic;
  }
  return kOk;
}

int cmd_transform(const Options &opt) {
  json doc = io::read_file(opt.path);
  if (opt.direction == "es") {
    io::expect_kind(doc, io::Kind::Event);
    EventModel m = io::event_from_json(
        doc, EventModelOptions{.allow_empty_process = opt.allow_empty_process});
    emit(io::to_json(es_transform(m)));
    return kOk;
  }
  io::expect_kind(doc, io::Kind::State);
  SETransformOutcome out = se_transform(io::state_from_json(doc));
  if (!out.ok()) {
    emit(io::to_json(*out.invalidity));
    return kSemantic;
  }
  emit(io::to_json(*out.model));
  return kOk;
}

PropertySelection parse_properties(const std::string &list) {
  PropertySelection sel{false, false, false, false, false, false};
  std::stringstream in(list);
  std::string name;
  while (std::getline(in, name, ',')) {
    if (name == "omega1")
      sel.omega1 = true;
    else if (name == "omega2")
      sel.omega2 = true;
    else if (name == "omega3")
      sel.omega3 = true;
    else if (name == "psi")
      sel.psi = true;
    else if (name == "we")
      sel.we = true;
    else if (name == "ic")
      sel.ic = true;
    else
      throw CLI::ValidationError("--properties",
                                 "unknown property '" + name + "'");
  }
  return sel;
}

int cmd_check(const Options &opt) {
  PropertySelection sel = parse_properties(opt.properties);
  json doc = io::read_file(opt.path);
  io::expect_kind(doc, io::Kind::State);
  emit(io::to_json(check_properties(io::state_from_json(doc), sel)));
  return kOk;
}

// Streams one line per cut; stops with the guard exit once more than
// max_cuts cuts exist.
template <class Next>
int stream_cuts(const Options &opt, const char *field, Next next) {
  std::size_t count = 0;
  while (auto ids = next()) {
    if (count == opt.max_cuts) {
      std::cerr << json{{"error", "CountExceeded"},
                        {"message", "more than " + std::to_string(opt.max_cuts) +
                                        " cuts; raise --max-cuts"}}
                       .dump()
                << "\n";
      return kGuard;
    }
    ++count;
    std::cout << json{{field, *ids}}.dump() << "\n" << std::flush;
  }
  std::cout << json{{"count", count}}.dump() << "\n" << std::flush;
  return kOk;
}

int cmd_cuts(const Options &opt) {
  json doc = io::read_file(opt.path);
  io::Kind kind = io::kind_of(doc);
  if (opt.family == "downsets") {
    if (kind != io::Kind::Event)
      throw KindMismatch("downsets need an 'event' document");
    EventModel m = io::event_from_json(
        doc, EventModelOptions{.allow_empty_process = opt.allow_empty_process});
    DownsetEnumerator en(m);
    return stream_cuts(opt, "events",
                       [&]() -> std::optional<std::vector<std::string>> {
                         auto c = en.next();
                         if (!c)
                           return std::nullopt;
                         return cut_events(m, *c);
                       });
  }
  std::optional<WidthAntichainEnumerator> en;
  if (kind == io::Kind::State)
    en.emplace(io::state_from_json(doc));
  else if (kind == io::Kind::Poset)
    en.emplace(io::poset_from_json(doc).poset);
  else
    throw KindMismatch("antichains need a 'state' or 'poset' document");
  return stream_cuts(opt, "states",
                     [&]() -> std::optional<std::vector<std::string>> {
                       auto c = en->next();
                       if (!c)
                         return std::nullopt;
                       return ids_of(en->model().poset(), *c);
                     });
}

int cmd_predicate(const Options &opt) {
  json model = io::read_file(opt.model);
  json pred_doc = io::read_file(opt.pred);
  io::expect_kind(model, io::Kind::State);
  io::expect_kind(pred_doc, io::Kind::Predicate);
  StateModel sm = io::state_from_json(model);
  PredicatePtr predicate = io::predicate_from_json(pred_doc);
  DetectMode mode = opt.first   ? DetectMode::First
                    : opt.count ? DetectMode::Count
                                : DetectMode::All;
  DetectionResult r = detect_width_predicate(sm, *predicate, mode);
  for (const auto &w : r.warnings)
    std::cerr << "warning: " << w << "\n";
  emit(io::detection_to_json(sm, r, mode));
  return kOk;
}

int cmd_checkpoints(const Options &opt) {
  json model = io::read_file(opt.model);
  json marks = io::read_file(opt.marks);
  io::expect_kind(model, io::Kind::State);
  io::expect_kind(marks, io::Kind::Marks);
  CheckpointEngine engine = opt.engine == "oracle" ? CheckpointEngine::Oracle
                            : opt.engine == "both" ? CheckpointEngine::Both
                                                   : CheckpointEngine::Fast;
  CheckpointReport r = find_useless_checkpoints(
      io::state_from_json(model), io::marks_from_json(marks), engine);
  emit(io::to_json(r));
  if (!r.engines_agree) {
    std::cerr << "error: fast and oracle engines disagree\n";
    return kSemantic;
  }
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  Options opt;
  CLI::App app{"Partial-order models of concurrent computations"};
  app.require_subcommand(1);
  app.add_flag("--allow-empty-process", opt.allow_empty_process,
               "Accept event models with processes that have no events");

  auto *validate = app.add_subcommand("validate", "Validate a model file");
  validate->add_option("path", opt.path, "Input file")->required();

  auto *transform =
      app.add_subcommand("transform", "Convert between event and state models");
  transform->add_option("path", opt.path, "Input file")->required();
  transform->add_option("--direction", opt.direction, "es or se")
      ->required()
      ->check(CLI::IsMember({"es", "se"}));

  auto *check = app.add_subcommand("check", "Check properties of a state model");
  check->add_option("path", opt.path, "Input file")->required();
  check->add_option("--properties", opt.properties,
                    "Comma-separated subset of omega1,omega2,omega3,psi,we,ic")
      ->capture_default_str();

  auto *cuts = app.add_subcommand("cuts", "Enumerate consistent cuts");
  cuts->add_option("path", opt.path, "Input file")->required();
  cuts->add_option("--family", opt.family, "downsets or antichains")
      ->required()
      ->check(CLI::IsMember({"downsets", "antichains"}));
  cuts->add_option("--max-cuts", opt.max_cuts,
                   "Stop with exit 5 beyond this many cuts")
      ->capture_default_str();

  auto *analyze = app.add_subcommand("analyze", "Predicate and checkpoint analyses");
  analyze->require_subcommand(1);
  auto *predicate =
      analyze->add_subcommand("predicate", "Find cuts satisfying a predicate");
  predicate->add_option("--model", opt.model, "State model file")->required();
  predicate->add_option("--pred", opt.pred, "Predicate file")->required();
  auto *first = predicate->add_flag("--first", opt.first, "Stop at the first match");
  predicate->add_flag("--count", opt.count, "Only count matches")->excludes(first);
  auto *checkpoints =
      analyze->add_subcommand("checkpoints", "Find useless checkpoints");
  checkpoints->add_option("--model", opt.model, "State model file")->required();
  checkpoints->add_option("--marks", opt.marks, "Checkpoint marking file")
      ->required();
  checkpoints->add_option("--engine", opt.engine, "fast, oracle or both")
      ->capture_default_str()
      ->check(CLI::IsMember({"fast", "oracle", "both"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*validate)
      return cmd_validate(opt);
    if (*transform)
      return cmd_transform(opt);
    if (*check)
      return cmd_check(opt);
    if (*cuts)
      return cmd_cuts(opt);
    if (*predicate)
      return cmd_predicate(opt);
    if (*checkpoints)
      return cmd_checkpoints(opt);
  } catch (const CLI::ValidationError &e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const ParseError &e) {
    std::cerr << io::error_to_json(e).dump() << "\n";
    return kParse;
  } catch (const SchemaError &e) {
    std::cerr << io::error_to_json(e).dump() << "\n";
    return kParse;
  } catch (const KindMismatch &e) {
    std::cerr << io::error_to_json(e).dump() << "\n";
    return kUsage;
  } catch (const CountExceeded &e) {
    std::cerr << io::error_to_json(e).dump() << "\n";
    return kGuard;
  } catch (const Error &e) {
    std::cerr << io::error_to_json(e).dump() << "\n";
    return kSemantic;
  }
  return kUsage;
}
