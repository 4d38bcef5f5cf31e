#include <pomodel/error.hpp>
#include <pomodel/transforms.hpp>

#include "detail/graph.hpp"

#include <algorithm>
#include <map>

namespace pomodel {

StateModel es_transform(const EventModel &m) {
  const Poset &ev = m.poset();
  const int n = m.processes();

  std::vector<std::string> ids;
  ChainPartition chains;
  std::vector<std::size_t> first(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    first[static_cast<std::size_t>(i)] = ids.size();
    std::vector<ElementIndex> chain;
    for (std::size_t k = 0; k <= m.length(i); ++k) {
      chain.push_back(ids.size());
      ids.push_back(std::to_string(i) + "." + std::to_string(k));
    }
    chains.chains.push_back(std::move(chain));
  }
  auto state = [&](int i, std::size_t k) {
    return first[static_cast<std::size_t>(i)] + k;
  };

  std::vector<std::pair<ElementIndex, ElementIndex>> pairs;
  for (int i = 1; i <= n; ++i) {
    for (std::size_t r = 0; r + 1 <= m.length(i); ++r)
      pairs.emplace_back(state(i, r), state(i, r + 1));
    for (int j = 1; j <= n; ++j) {
      if (j == i)
        continue;
      for (std::size_t r = 0; r < m.length(i); ++r) {
        ElementIndex after_r = m.event_at(i, static_cast<int>(r + 1));
        for (std::size_t s = 1; s <= m.length(j); ++s) {
          ElementIndex ev_js = m.event_at(j, static_cast<int>(s));
          if (after_r == ev_js || ev.less(after_r, ev_js))
            pairs.emplace_back(state(i, r), state(j, s));
        }
      }
    }
  }
  Poset states = Poset::from_indices(std::move(ids), pairs);
  return StateModel::build(std::move(states), std::move(chains));
}

std::optional<std::size_t> EventGraph::node_of(Slot s) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), s);
  if (it == nodes.end() || *it != s)
    return std::nullopt;
  return static_cast<std::size_t>(it - nodes.begin());
}

bool EventGraph::has_edge(Slot from, Slot to) const {
  auto a = node_of(from), b = node_of(to);
  if (!a || !b)
    return false;
  return std::find(edges.begin(), edges.end(), std::make_pair(*a, *b)) !=
         edges.end();
}

namespace {

std::string slot_list(const std::vector<Slot> &slots) {
  std::string out;
  for (std::size_t k = 0; k < slots.size(); ++k)
    out += (k ? "," : "") + to_string(slots[k]);
  return out;
}

} // namespace

SETransformOutcome se_transform(const StateModel &sm) {
  const Poset &p = sm.poset();
  const int n = sm.chains();
  SETransformOutcome out;
  EventGraph &g = out.graph;

  for (int i = 1; i <= n; ++i)
    for (std::size_t k = 1; k <= sm.final_index(i); ++k)
      g.nodes.push_back({i, static_cast<int>(k)});
  std::sort(g.nodes.begin(), g.nodes.end());
  auto node = [&](int i, std::size_t k) {
    return *g.node_of({i, static_cast<int>(k)});
  };

  std::vector<std::vector<std::size_t>> adj(g.nodes.size());
  auto add_edge = [&](std::size_t a, std::size_t b) {
    adj[a].push_back(b);
    g.edges.emplace_back(a, b);
  };
  for (int i = 1; i <= n; ++i) {
    for (std::size_t r = 1; r <= sm.final_index(i); ++r) {
      if (r + 1 <= sm.final_index(i))
        add_edge(node(i, r), node(i, r + 1));
      ElementIndex before = sm.state(i, r - 1);
      for (int j = 1; j <= n; ++j) {
        if (j == i)
          continue;
        for (std::size_t s = 1; s <= sm.final_index(j); ++s)
          if (p.less(before, sm.state(j, s)))
            add_edge(node(i, r), node(j, s));
      }
    }
  }
  std::sort(g.edges.begin(), g.edges.end());

  g.components = detail::strongly_connected_components(adj);
  std::sort(g.components.begin(), g.components.end());

  InvalidityReport report;
  for (const auto &comp : g.components) {
    std::map<int, std::vector<Slot>> per_chain;
    for (std::size_t v : comp)
      per_chain[g.nodes[v].proc].push_back(g.nodes[v]);
    OffendingComponent bad;
    for (auto &[chain, members] : per_chain)
      if (members.size() > 1)
        bad.collisions.emplace_back(chain, members);
    if (bad.collisions.empty())
      continue;
    for (std::size_t v : comp)
      bad.members.push_back(g.nodes[v]);
    report.components.push_back(std::move(bad));
  }
  if (!report.components.empty()) {
    out.invalidity = std::move(report);
    return out;
  }

  // Collapse: one event per component, ordered by its smallest slot.
  std::vector<std::size_t> comp_of(g.nodes.size());
  for (std::size_t c = 0; c < g.components.size(); ++c)
    for (std::size_t v : g.components[c])
      comp_of[v] = c;

  std::vector<std::string> ids;
  std::map<std::string, SlotSet> labels;
  for (const auto &comp : g.components) {
    SlotSet slots;
    for (std::size_t v : comp)
      slots.push_back(g.nodes[v]);
    std::string id = slots.size() == 1 ? to_string(slots.front())
                                       : "shared(" + slot_list(slots) + ")";
    ids.push_back(id);
    labels.emplace(id, std::move(slots));
  }
  std::vector<std::pair<ElementIndex, ElementIndex>> pairs;
  for (const auto &[a, b] : g.edges)
    if (comp_of[a] != comp_of[b])
      pairs.emplace_back(comp_of[a], comp_of[b]);

  try {
    Poset events = Poset::from_indices(std::move(ids), pairs);
    out.model = EventModel::build(std::move(events), n, labels,
                                  EventModelOptions{.allow_empty_process = true});
  } catch (const Error &e) {
    throw InternalConsistencyError(
        std::string("collapsed event graph is not a valid event model: ") +
        e.what());
  }
  return out;
}

bool roundtrip_es_se(const EventModel &m) {
  SETransformOutcome back = se_transform(es_transform(m));
  return back.ok() && equivalent(*back.model, m);
}

bool same_state_order(const StateModel &a, const StateModel &b) {
  if (a.chains() != b.chains())
    return false;
  for (int i = 1; i <= a.chains(); ++i)
    if (a.final_index(i) != b.final_index(i))
      return false;
  const Poset &pa = a.poset();
  const Poset &pb = b.poset();
  if (pa.size() != pb.size())
    return false;
  std::vector<ElementIndex> to_b(pa.size());
  for (ElementIndex s = 0; s < pa.size(); ++s)
    to_b[s] = b.state(a.chain_of(s), a.position_of(s));
  for (ElementIndex x = 0; x < pa.size(); ++x)
    for (ElementIndex y = 0; y < pa.size(); ++y)
      if (pa.less(x, y) != pb.less(to_b[x], to_b[y]))
        return false;
  return true;
}

} // namespace pomodel
