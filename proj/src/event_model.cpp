#include <pomodel/error.hpp>
#include <pomodel/event_model.hpp>

#include <algorithm>

namespace pomodel {

std::string to_string(const Slot &s) {
  return std::to_string(s.proc) + "." + std::to_string(s.idx);
}

EventModel EventModel::build(Poset poset, int processes,
                             const std::map<std::string, SlotSet> &labels,
                             EventModelOptions options) {
  if (processes < 0)
    throw InvalidLabel("process count must be non-negative");
  EventModel m;
  m.n_ = processes;
  m.slots_.assign(poset.size(), {});
  m.per_process_.assign(static_cast<std::size_t>(processes), {});

  for (const auto &[id, slots] : labels) {
    ElementIndex e = poset.index_of(id);
    if (slots.empty())
      throw InvalidLabel("event '" + id + "' has no process slot");
    SlotSet sorted = slots;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      const Slot &s = sorted[k];
      if (s.proc < 1 || s.proc > processes)
        throw InvalidLabel("event '" + id + "' names process " +
                           std::to_string(s.proc) + " outside 1.." +
                           std::to_string(processes));
      if (k > 0 && sorted[k - 1].proc == s.proc)
        throw InvalidLabel("event '" + id + "' has two slots on process " +
                           std::to_string(s.proc));
    }
    m.slots_[e] = std::move(sorted);
  }
  for (ElementIndex e = 0; e < poset.size(); ++e)
    if (m.slots_[e].empty())
      throw InvalidLabel("event '" + poset.id(e) + "' has no label");

  std::vector<std::vector<std::pair<int, ElementIndex>>> by_proc(
      static_cast<std::size_t>(processes));
  for (ElementIndex e = 0; e < poset.size(); ++e)
    for (const Slot &s : m.slots_[e])
      by_proc[static_cast<std::size_t>(s.proc - 1)].emplace_back(s.idx, e);

  for (int i = 1; i <= processes; ++i) {
    auto &entries = by_proc[static_cast<std::size_t>(i - 1)];
    if (entries.empty() && !options.allow_empty_process)
      throw EmptyProcess("process " + std::to_string(i) + " has no events");
    std::sort(entries.begin(), entries.end());
    auto &seq = m.per_process_[static_cast<std::size_t>(i - 1)];
    for (std::size_t k = 0; k < entries.size(); ++k) {
      if (k > 0 && entries[k].first == entries[k - 1].first &&
          poset.concurrent(entries[k - 1].second, entries[k].second))
        throw NotTotallyOrdered("process " + std::to_string(i) + ": events '" +
                                poset.id(entries[k - 1].second) + "' and '" +
                                poset.id(entries[k].second) +
                                "' are concurrent");
      if (entries[k].first != static_cast<int>(k + 1))
        throw IndexGap("process " + std::to_string(i) +
                       " indices are not consecutive from 1 (found " +
                       std::to_string(entries[k].first) + " at position " +
                       std::to_string(k + 1) + ")");
      seq.push_back(entries[k].second);
    }
    for (std::size_t k = 1; k < seq.size(); ++k) {
      if (!poset.less(seq[k - 1], seq[k])) {
        std::string msg = "process " + std::to_string(i) + ": events '" +
                          poset.id(seq[k - 1]) + "' and '" + poset.id(seq[k]);
        msg += poset.concurrent(seq[k - 1], seq[k])
                   ? "' are concurrent"
                   : "' are ordered against their indices";
        throw NotTotallyOrdered(msg);
      }
    }
  }
  m.poset_ = std::move(poset);
  return m;
}

bool EventModel::is_asc() const {
  return std::all_of(slots_.begin(), slots_.end(),
                     [](const SlotSet &s) { return s.size() == 1; });
}

bool EventModel::is_consistent_cut(const std::vector<std::string> &cut) const {
  Bitset set(poset_.size());
  for (const auto &id : cut)
    set.set(poset_.index_of(id));
  return is_consistent_cut(set);
}

bool EventModel::is_consistent_cut(const Bitset &cut) const {
  for (auto f = cut.find_first(); f != Bitset::npos; f = cut.find_next(f))
    if (!poset_.below(f).is_subset_of(cut))
      return false;
  return true;
}

bool equivalent(const EventModel &a, const EventModel &b) {
  if (a.processes() != b.processes() || a.poset().size() != b.poset().size())
    return false;
  for (int i = 1; i <= a.processes(); ++i)
    if (a.length(i) != b.length(i))
      return false;
  // Each event is pinned down by its first slot.
  std::vector<ElementIndex> to_b(a.poset().size());
  for (ElementIndex e = 0; e < a.poset().size(); ++e) {
    const Slot &s = a.slots(e).front();
    ElementIndex f = b.event_at(s.proc, s.idx);
    if (a.slots(e) != b.slots(f))
      return false;
    to_b[e] = f;
  }
  for (ElementIndex x = 0; x < a.poset().size(); ++x)
    for (ElementIndex y = 0; y < a.poset().size(); ++y)
      if (a.poset().less(x, y) != b.poset().less(to_b[x], to_b[y]))
        return false;
  return true;
}

} // namespace pomodel
