#include <pomodel/analysis.hpp>
#include <pomodel/error.hpp>

#include "detail/graph.hpp"

#include <algorithm>
#include <cmath>

namespace pomodel {

std::optional<Comparison> parse_comparison(std::string_view text) {
  if (text == "<")
    return Comparison::Less;
  if (text == "<=")
    return Comparison::LessEqual;
  if (text == "==")
    return Comparison::Equal;
  if (text == "!=")
    return Comparison::NotEqual;
  if (text == ">=")
    return Comparison::GreaterEqual;
  if (text == ">")
    return Comparison::Greater;
  return std::nullopt;
}

const char *to_string(Comparison c) {
  switch (c) {
  case Comparison::Less:
    return "<";
  case Comparison::LessEqual:
    return "<=";
  case Comparison::Equal:
    return "==";
  case Comparison::NotEqual:
    return "!=";
  case Comparison::GreaterEqual:
    return ">=";
  case Comparison::Greater:
    return ">";
  }
  return "?";
}

namespace pred {
namespace {
PredicatePtr make(PredicateNode n) {
  return std::make_shared<const PredicateNode>(std::move(n));
}
} // namespace

PredicatePtr truth() { return make({}); }
PredicatePtr falsity() {
  PredicateNode n;
  n.op = PredicateNode::Op::False;
  return make(std::move(n));
}
PredicatePtr all_of(std::vector<PredicatePtr> children) {
  PredicateNode n;
  n.op = PredicateNode::Op::And;
  n.children = std::move(children);
  return make(std::move(n));
}
PredicatePtr any_of(std::vector<PredicatePtr> children) {
  PredicateNode n;
  n.op = PredicateNode::Op::Or;
  n.children = std::move(children);
  return make(std::move(n));
}
PredicatePtr negate(PredicatePtr child) {
  PredicateNode n;
  n.op = PredicateNode::Op::Not;
  n.children.push_back(std::move(child));
  return make(std::move(n));
}
PredicatePtr position(int proc, Comparison cmp, std::size_t index) {
  PredicateNode n;
  n.op = PredicateNode::Op::Position;
  n.proc = proc;
  n.cmp = cmp;
  n.value = static_cast<double>(index);
  return make(std::move(n));
}
PredicatePtr attr(int proc, std::string name, Comparison cmp, AttrValue value) {
  PredicateNode n;
  n.op = PredicateNode::Op::Attr;
  n.proc = proc;
  n.name = std::move(name);
  n.cmp = cmp;
  n.value = std::move(value);
  return make(std::move(n));
}
PredicatePtr every(std::string name, Comparison cmp, AttrValue value) {
  PredicateNode n;
  n.op = PredicateNode::Op::All;
  n.name = std::move(name);
  n.cmp = cmp;
  n.value = std::move(value);
  return make(std::move(n));
}
PredicatePtr sum(std::string name, Comparison cmp, double value) {
  PredicateNode n;
  n.op = PredicateNode::Op::Sum;
  n.name = std::move(name);
  n.cmp = cmp;
  n.value = value;
  return make(std::move(n));
}
PredicatePtr count(std::string name, Comparison cmp, double value) {
  PredicateNode n;
  n.op = PredicateNode::Op::Count;
  n.name = std::move(name);
  n.cmp = cmp;
  n.value = value;
  return make(std::move(n));
}
} // namespace pred

void validate_predicate(const PredicateNode &node, int processes) {
  using Op = PredicateNode::Op;
  switch (node.op) {
  case Op::True:
  case Op::False:
    return;
  case Op::Not:
    if (node.children.size() != 1)
      throw PredicateError("'not' takes exactly one operand");
    [[fallthrough]];
  case Op::And:
  case Op::Or:
    for (const auto &c : node.children) {
      if (!c)
        throw PredicateError("null operand");
      validate_predicate(*c, processes);
    }
    return;
  case Op::Position: {
    const double *v = std::get_if<double>(&node.value);
    if (!v || *v < 0 || std::floor(*v) != *v)
      throw PredicateError("position value must be a nonnegative integer");
    [[fallthrough]];
  }
  case Op::Attr:
    if (node.proc < 1 || node.proc > processes)
      throw PredicateError("process " + std::to_string(node.proc) +
                           " is out of range 1.." + std::to_string(processes));
    return;
  case Op::All:
    return;
  case Op::Sum:
  case Op::Count:
    if (!std::holds_alternative<double>(node.value))
      throw PredicateError("aggregate value must be a number");
    return;
  }
}

namespace {

template <class T> bool compare(const T &a, Comparison c, const T &b) {
  switch (c) {
  case Comparison::Less:
    return a < b;
  case Comparison::LessEqual:
    return a <= b;
  case Comparison::Equal:
    return a == b;
  case Comparison::NotEqual:
    return a != b;
  case Comparison::GreaterEqual:
    return a >= b;
  case Comparison::Greater:
    return a > b;
  }
  return false;
}

const char *type_name(const AttrValue &v) {
  if (std::holds_alternative<bool>(v))
    return "bool";
  if (std::holds_alternative<double>(v))
    return "number";
  return "string";
}

class Evaluator {
public:
  Evaluator(const StateModel &sm, std::span<const ElementIndex> cut,
            std::set<std::string> *warnings)
      : sm_(sm), cut_(cut), warnings_(warnings) {}

  bool eval(const PredicateNode &n) {
    using Op = PredicateNode::Op;
    switch (n.op) {
    case Op::True:
      return true;
    case Op::False:
      return false;
    case Op::And:
      return std::all_of(n.children.begin(), n.children.end(),
                         [&](const PredicatePtr &c) { return eval(*c); });
    case Op::Or:
      return std::any_of(n.children.begin(), n.children.end(),
                         [&](const PredicatePtr &c) { return eval(*c); });
    case Op::Not:
      return !eval(*n.children.front());
    case Op::Position:
      return compare(static_cast<double>(sm_.position_of(state(n.proc))),
                     n.cmp, std::get<double>(n.value));
    case Op::Attr:
      return attr_clause(n.proc, n);
    case Op::All:
      for (int p = 1; p <= sm_.chains(); ++p)
        if (!attr_clause(p, n))
          return false;
      return true;
    case Op::Sum: {
      double total = 0;
      for (int p = 1; p <= sm_.chains(); ++p) {
        const AttrValue *v = lookup(p, n.name);
        if (!v)
          return false;
        if (const double *d = std::get_if<double>(v))
          total += *d;
        else {
          warn("attribute '" + n.name + "' of " + id(p) + " is a " +
               type_name(*v) + ", not a number");
          return false;
        }
      }
      return compare(total, n.cmp, std::get<double>(n.value));
    }
    case Op::Count: {
      double hits = 0;
      for (int p = 1; p <= sm_.chains(); ++p) {
        const AttrValue *v = lookup(p, n.name);
        if (!v)
          return false;
        if (const bool *b = std::get_if<bool>(v))
          hits += *b ? 1 : 0;
        else if (const double *d = std::get_if<double>(v))
          hits += *d != 0 ? 1 : 0;
        else {
          warn("attribute '" + n.name + "' of " + id(p) +
               " is a string and cannot be counted");
          return false;
        }
      }
      return compare(hits, n.cmp, std::get<double>(n.value));
    }
    }
    return false;
  }

private:
  ElementIndex state(int proc) const {
    return cut_[static_cast<std::size_t>(proc - 1)];
  }
  const std::string &id(int proc) const { return sm_.poset().id(state(proc)); }

  void warn(std::string message) {
    if (warnings_)
      warnings_->insert(std::move(message));
  }

  const AttrValue *lookup(int proc, const std::string &name) {
    const AttrMap *attrs = sm_.attrs(state(proc));
    if (attrs) {
      auto it = attrs->find(name);
      if (it != attrs->end())
        return &it->second;
    }
    warn("state " + id(proc) + " has no attribute '" + name + "'");
    return nullptr;
  }

  bool attr_clause(int proc, const PredicateNode &n) {
    const AttrValue *v = lookup(proc, n.name);
    if (!v)
      return false;
    if (v->index() != n.value.index()) {
      warn("attribute '" + n.name + "' of " + id(proc) + " is a " +
           type_name(*v) + " but is compared to a " + type_name(n.value));
      return false;
    }
    return std::visit(
        [&](const auto &lhs) {
          using T = std::decay_t<decltype(lhs)>;
          return compare(lhs, n.cmp, std::get<T>(n.value));
        },
        *v);
  }

  const StateModel &sm_;
  std::span<const ElementIndex> cut_;
  std::set<std::string> *warnings_;
};

} // namespace

bool evaluate_predicate(const PredicateNode &node, const StateModel &sm,
                        std::span<const ElementIndex> cut,
                        std::set<std::string> *warnings) {
  return Evaluator(sm, cut, warnings).eval(node);
}

namespace {

DetectionResult detect(const StateModel &sm,
                       const std::function<bool(std::span<const ElementIndex>,
                                                std::set<std::string> &)> &test,
                       DetectMode mode) {
  DetectionResult result;
  std::set<std::string> warnings;
  WidthAntichainEnumerator en(sm);
  while (auto cut = en.next()) {
    ++result.examined;
    if (!test(*cut, warnings))
      continue;
    ++result.count;
    if (mode != DetectMode::Count)
      result.cuts.push_back(std::move(*cut));
    if (mode == DetectMode::First)
      break;
  }
  result.warnings.assign(warnings.begin(), warnings.end());
  return result;
}

} // namespace

DetectionResult detect_width_predicate(const StateModel &sm,
                                       const PredicateNode &predicate,
                                       DetectMode mode) {
  validate_predicate(predicate, sm.chains());
  return detect(
      sm,
      [&](std::span<const ElementIndex> cut, std::set<std::string> &warnings) {
        return evaluate_predicate(predicate, sm, cut, &warnings);
      },
      mode);
}

DetectionResult detect_width_predicate(const StateModel &sm,
                                       const NativePredicate &predicate,
                                       DetectMode mode) {
  return detect(
      sm,
      [&](std::span<const ElementIndex> cut, std::set<std::string> &) {
        return predicate(sm, cut);
      },
      mode);
}

void validate_marking(const StateModel &sm, const CheckpointMarking &marks) {
  if (marks.marks.size() != static_cast<std::size_t>(sm.chains()))
    throw BadMarking("marking lists " + std::to_string(marks.marks.size()) +
                     " processes, model has " + std::to_string(sm.chains()));
  for (int i = 1; i <= sm.chains(); ++i) {
    const auto &m = marks.marks[static_cast<std::size_t>(i - 1)];
    const std::string where = "process " + std::to_string(i);
    if (m.empty() || m.front() != 0)
      throw BadMarking(where + ": initial state 0 must be checkpointed");
    if (m.back() != sm.final_index(i))
      throw BadMarking(where + ": final state " +
                       std::to_string(sm.final_index(i)) +
                       " must be checkpointed");
    for (std::size_t k = 1; k < m.size(); ++k)
      if (m[k] <= m[k - 1])
        throw BadMarking(where + ": indices must be strictly increasing");
  }
}

StateModel induced_checkpoint_model(const StateModel &sm,
                                    const CheckpointMarking &marks) {
  validate_marking(sm, marks);
  std::vector<ElementIndex> keep;
  ChainPartition chains;
  for (int i = 1; i <= sm.chains(); ++i) {
    std::vector<ElementIndex> chain;
    for (std::size_t k : marks.marks[static_cast<std::size_t>(i - 1)]) {
      chain.push_back(keep.size());
      keep.push_back(sm.state(i, k));
    }
    chains.chains.push_back(std::move(chain));
  }
  Poset sub = sm.poset().restrict_to(keep);
  std::map<std::string, AttrMap> attrs;
  for (ElementIndex s : keep)
    if (const AttrMap *a = sm.attrs(s))
      attrs.emplace(sm.poset().id(s), *a);
  return StateModel::build(std::move(sub), std::move(chains), std::move(attrs));
}

const char *to_string(CheckpointEngine e) {
  switch (e) {
  case CheckpointEngine::Fast:
    return "fast";
  case CheckpointEngine::Oracle:
    return "oracle";
  case CheckpointEngine::Both:
    return "both";
  }
  return "?";
}

std::vector<std::string> CheckpointReport::useless() const {
  std::vector<std::string> out;
  for (const auto &v : verdicts)
    if (!v.useful)
      out.push_back(v.id);
  return out;
}

std::vector<std::optional<std::vector<ElementIndex>>>
global_checkpoints_by_enumeration(const StateModel &induced,
                                  std::size_t bound) {
  const Poset &p = induced.poset();
  const int n = induced.chains();
  double combos = 1;
  for (int i = 1; i <= n; ++i)
    combos *= static_cast<double>(induced.final_index(i) + 1);
  if (combos > std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(bound, 60))))
    throw OracleBoundExceeded("checkpoint oracle would examine " +
                              std::to_string(static_cast<long double>(combos)) +
                              " combinations, over 2^" + std::to_string(bound));

  std::vector<std::optional<std::vector<ElementIndex>>> found(p.size());
  std::vector<ElementIndex> pick;
  auto rec = [&](auto &&self, int chain) -> void {
    if (chain > n) {
      for (ElementIndex s : pick)
        if (!found[s])
          found[s] = pick;
      return;
    }
    for (std::size_t k = 0; k <= induced.final_index(chain); ++k) {
      ElementIndex s = induced.state(chain, k);
      bool ok = std::all_of(pick.begin(), pick.end(), [&](ElementIndex t) {
        return p.concurrent(s, t);
      });
      if (!ok)
        continue;
      pick.push_back(s);
      self(self, chain + 1);
      pick.pop_back();
    }
  };
  if (n > 0)
    rec(rec, 1);
  return found;
}

std::vector<std::optional<std::vector<ElementIndex>>>
global_checkpoints_by_reachability(const StateModel &induced) {
  const Poset &p = induced.poset();
  const int n = induced.chains();

  // Node (i,x), 0 <= x <= n_i + 1, sits between states [i,x-1] and [i,x];
  // (i,0) is the start and (i,n_i+1) the sink of chain i.
  std::vector<std::size_t> base(static_cast<std::size_t>(n) + 2, 0);
  for (int i = 1; i <= n; ++i)
    base[static_cast<std::size_t>(i + 1)] =
        base[static_cast<std::size_t>(i)] + induced.final_index(i) + 2;
  auto node = [&](int i, std::size_t x) {
    return base[static_cast<std::size_t>(i)] + x;
  };
  detail::Adjacency adj(base[static_cast<std::size_t>(n) + 1]);
  std::vector<std::size_t> starts, sinks;
  for (int i = 1; i <= n; ++i) {
    const std::size_t last = induced.final_index(i);
    starts.push_back(node(i, 0));
    sinks.push_back(node(i, last + 1));
    for (std::size_t x = 0; x <= last; ++x)
      adj[node(i, x)].push_back(node(i, x + 1));
    for (int j = 1; j <= n; ++j) {
      if (j == i)
        continue;
      for (std::size_t r = 1; r <= last + 1; ++r)
        for (std::size_t s = 0; s <= induced.final_index(j); ++s)
          if (p.less(induced.state(i, r - 1), induced.state(j, s)))
            adj[node(i, r)].push_back(node(j, s));
    }
  }

  const detail::Adjacency rev = detail::reversed(adj);
  const std::vector<char> reaches_start = detail::reachable_from(rev, starts);
  const std::vector<char> from_sink = detail::reachable_from(adj, sinks);
  const bool none_at_all = std::any_of(
      sinks.begin(), sinks.end(), [&](std::size_t v) { return reaches_start[v]; });

  std::vector<std::size_t> component(adj.size());
  {
    auto comps = detail::strongly_connected_components(adj);
    for (std::size_t c = 0; c < comps.size(); ++c)
      for (std::size_t v : comps[c])
        component[v] = c;
  }

  std::vector<std::optional<std::vector<ElementIndex>>> found(p.size());
  if (none_at_all)
    return found;
  for (int i = 1; i <= n; ++i) {
    for (std::size_t x = 0; x <= induced.final_index(i); ++x) {
      const std::size_t here = node(i, x), after = node(i, x + 1);
      if (component[here] == component[after] || reaches_start[after] ||
          from_sink[here])
        continue;
      // Least closed set holding every start and (i,x).
      std::vector<char> closed = reaches_start;
      std::vector<std::size_t> todo;
      if (!closed[here]) {
        closed[here] = 1;
        todo.push_back(here);
      }
      while (!todo.empty()) {
        std::size_t v = todo.back();
        todo.pop_back();
        for (std::size_t w : rev[v])
          if (!closed[w]) {
            closed[w] = 1;
            todo.push_back(w);
          }
      }
      std::vector<ElementIndex> witness;
      for (int j = 1; j <= n; ++j) {
        std::size_t g = 0;
        while (closed[node(j, g + 1)])
          ++g;
        witness.push_back(induced.state(j, g));
      }
      found[induced.state(i, x)] = std::move(witness);
    }
  }
  return found;
}

CheckpointReport find_useless_checkpoints(const StateModel &sm,
                                          const CheckpointMarking &marks,
                                          CheckpointEngine engine,
                                          std::size_t bound) {
  StateModel induced = induced_checkpoint_model(sm, marks);
  std::vector<std::optional<std::vector<ElementIndex>>> fast, oracle;
  if (engine != CheckpointEngine::Oracle)
    fast = global_checkpoints_by_reachability(induced);
  if (engine != CheckpointEngine::Fast)
    oracle = global_checkpoints_by_enumeration(induced, bound);

  CheckpointReport report{std::move(induced), engine, {}, true};
  const StateModel &im = report.induced;
  for (int i = 1; i <= im.chains(); ++i) {
    const auto &chain_marks = marks.marks[static_cast<std::size_t>(i - 1)];
    for (std::size_t k = 0; k <= im.final_index(i); ++k) {
      ElementIndex s = im.state(i, k);
      CheckpointVerdict v;
      v.id = im.poset().id(s);
      v.chain = i;
      v.state_index = chain_marks[k];
      v.mark_index = k;
      const auto &primary = engine == CheckpointEngine::Oracle ? oracle : fast;
      v.useful = primary[s].has_value();
      if (v.useful)
        for (ElementIndex w : *primary[s])
          v.witness.push_back(im.poset().id(w));
      if (engine == CheckpointEngine::Both) {
        v.fast_useful = fast[s].has_value();
        v.oracle_useful = oracle[s].has_value();
        if (*v.fast_useful != *v.oracle_useful)
          report.engines_agree = false;
      }
      report.verdicts.push_back(std::move(v));
    }
  }
  return report;
}

} // namespace pomodel
