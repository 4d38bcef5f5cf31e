#pragma once

#include <pomodel/event_model.hpp>
#include <pomodel/state_model.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pomodel {

/// Event model to state model. Chain i gets states "i.0" .. "i.n_i";
/// [i,r] < [j,s] for i != j iff event (i,r+1) happened before (or is the
/// same shared event as) event (j,s).
StateModel es_transform(const EventModel &m);

/// The uncollapsed event graph built from a state model: one node per
/// (chain, index >= 1) and an edge (i,r) -> (j,s) whenever [i,r-1] < [j,s]
/// or i == j and s == r+1.
struct EventGraph {
  std::vector<Slot> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  /// Strongly connected components, each sorted by slot.
  std::vector<std::vector<std::size_t>> components;

  std::optional<std::size_t> node_of(Slot s) const;
  bool has_edge(Slot from, Slot to) const;
};

/// A component that would need two events of one process to be the same
/// event.
struct OffendingComponent {
  std::vector<Slot> members;
  /// Chains contributing two or more members, with those members.
  std::vector<std::pair<int, std::vector<Slot>>> collisions;
};

struct InvalidityReport {
  std::vector<OffendingComponent> components;
};

struct SETransformOutcome {
  EventGraph graph; ///< kept for diagnostics
  std::optional<EventModel> model;
  std::optional<InvalidityReport> invalidity;

  bool ok() const noexcept { return model.has_value(); }
};

/// Build the event graph, collapse every component whose nodes sit on
/// distinct chains into one shared event, and report components that put
/// two nodes of one chain together. Collapsed events are named
/// "shared(i1.k1,i2.k2,...)"; plain events "i.k".
SETransformOutcome se_transform(const StateModel &sm);

/// se(es(m)) is equivalent to m.
bool roundtrip_es_se(const EventModel &m);

/// Same chain lengths and same order between positionally matching states.
bool same_state_order(const StateModel &a, const StateModel &b);

} // namespace pomodel
