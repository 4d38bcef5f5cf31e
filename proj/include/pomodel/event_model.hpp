#pragma once

#include <pomodel/poset.hpp>

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace pomodel {

/// Position of an event on one process: the idx-th event (1-based) of
/// process proc (1-based).
struct Slot {
  int proc = 0;
  int idx = 0;

  auto operator<=>(const Slot &) const = default;
};

std::string to_string(const Slot &s); // "proc.idx"

using SlotSet = std::vector<Slot>; // sorted by proc

struct EventModelOptions {
  /// Accept processes without events (n_i = 0).
  bool allow_empty_process = false;
};

/// Events under happened-before plus the map from each event to the
/// process slots it occupies. Shared events carry one slot per process.
class EventModel {
public:
  /// Validates and builds. `labels` maps event id to its slots.
  /// Throws InvalidLabel, NotTotallyOrdered, IndexGap, EmptyProcess,
  /// UnknownElement.
  static EventModel build(Poset poset, int processes,
                          const std::map<std::string, SlotSet> &labels,
                          EventModelOptions options = {});

  const Poset &poset() const noexcept { return poset_; }
  int processes() const noexcept { return n_; }

  /// Events of process `proc` (1-based) in order.
  const std::vector<ElementIndex> &events_of(int proc) const {
    return per_process_.at(static_cast<std::size_t>(proc - 1));
  }
  std::size_t length(int proc) const { return events_of(proc).size(); }

  const SlotSet &slots(ElementIndex e) const { return slots_.at(e); }

  /// The event at (proc, idx), 1-based.
  ElementIndex event_at(int proc, int idx) const {
    return events_of(proc).at(static_cast<std::size_t>(idx - 1));
  }

  /// No event carries more than one slot.
  bool is_asc() const;

  /// True iff the set is downward closed. Throws UnknownElement.
  bool is_consistent_cut(const std::vector<std::string> &cut) const;
  bool is_consistent_cut(const Bitset &cut) const;

private:
  Poset poset_;
  int n_ = 0;
  std::vector<std::vector<ElementIndex>> per_process_;
  std::vector<SlotSet> slots_;
};

/// Structural equality up to event renaming: the events must carry the same
/// slot sets and be ordered identically.
bool equivalent(const EventModel &a, const EventModel &b);

} // namespace pomodel
