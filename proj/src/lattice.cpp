#include <pomodel/error.hpp>
#include <pomodel/lattice.hpp>

#include <algorithm>

namespace pomodel {

DownsetEnumerator::DownsetEnumerator(const EventModel &m)
    : model_(&m), n_(static_cast<std::size_t>(m.processes())) {
  const Poset &p = m.poset();
  std::vector<Bitset> proc_mask(n_, Bitset(p.size()));
  for (int i = 1; i <= m.processes(); ++i)
    for (ElementIndex e : m.events_of(i))
      proc_mask[static_cast<std::size_t>(i - 1)].set(e);
  clock_.assign(p.size() * n_, 0);
  for (ElementIndex e = 0; e < p.size(); ++e)
    for (std::size_t j = 0; j < n_; ++j)
      clock_[e * n_ + j] = (p.below(e) & proc_mask[j]).count();
}

bool DownsetEnumerator::enabled(ElementIndex e, const CutVector &cut) {
  stats_.work += n_;
  for (std::size_t j = 0; j < n_; ++j)
    if (cut[j] < clock_[e * n_ + j])
      return false;
  return true;
}

DownsetEnumerator::Frame DownsetEnumerator::expand(CutVector cut) {
  const EventModel &m = *model_;
  const Poset &p = m.poset();

  std::vector<ElementIndex> frontier;
  for (std::size_t i = 0; i < n_; ++i)
    if (cut[i] > 0)
      frontier.push_back(m.event_at(static_cast<int>(i + 1),
                                    static_cast<int>(cut[i])));
  std::sort(frontier.begin(), frontier.end());
  frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
  std::vector<ElementIndex> maximal;
  for (ElementIndex f : frontier) {
    bool dominated = false;
    for (ElementIndex g : frontier) {
      ++stats_.work;
      if (p.less(f, g)) {
        dominated = true;
        break;
      }
    }
    if (!dominated)
      maximal.push_back(f);
  }

  Frame frame{std::move(cut), {}, 0};
  for (std::size_t i = 0; i < n_; ++i) {
    const int proc = static_cast<int>(i + 1);
    if (frame.cut[i] >= m.length(proc))
      continue;
    ElementIndex e = m.event_at(proc, static_cast<int>(frame.cut[i] + 1));
    if (m.slots(e).front().proc != proc || !enabled(e, frame.cut))
      continue;
    // e must become the largest maximal event of the extended cut.
    bool canonical = true;
    for (ElementIndex mx : maximal) {
      ++stats_.work;
      if (!p.less(mx, e) && mx > e) {
        canonical = false;
        break;
      }
    }
    if (canonical)
      frame.children.push_back(e);
  }
  return frame;
}

std::optional<CutVector> DownsetEnumerator::next() {
  if (!started_) {
    started_ = true;
    stack_.push_back(expand(CutVector(n_, 0)));
    ++stats_.cuts;
    return stack_.back().cut;
  }
  while (!stack_.empty()) {
    Frame &top = stack_.back();
    if (top.pos < top.children.size()) {
      ElementIndex e = top.children[top.pos++];
      CutVector child = top.cut;
      for (const Slot &s : model_->slots(e))
        child[static_cast<std::size_t>(s.proc - 1)] =
            static_cast<std::size_t>(s.idx);
      stack_.push_back(expand(child));
      ++stats_.cuts;
      return child;
    }
    stack_.pop_back();
  }
  return std::nullopt;
}

namespace {

void require_enumerable(const StateModel &sm) {
  Verdict we = check_width_extensible(sm.poset());
  if (!we.holds)
    throw NotWidthExtensible("state model is not width-extensible: " +
                                 we.detail,
                             we.witness);
  const std::size_t w = width(sm.poset()).width;
  if (static_cast<std::size_t>(sm.chains()) != w)
    throw NotWidthExtensible("state model has " +
                                 std::to_string(sm.chains()) +
                                 " chains but width " + std::to_string(w),
                             {});
}

} // namespace

WidthAntichainEnumerator::WidthAntichainEnumerator(StateModel sm)
    : sm_(std::move(sm)) {
  require_enumerable(sm_);
  SETransformOutcome se = se_transform(sm_);
  if (!se.ok())
    throw SETransformFailed("state model has no event model",
                            *se.invalidity);
  events_ = std::move(*se.model);
  downsets_.emplace(*events_);
}

WidthAntichainEnumerator::WidthAntichainEnumerator(const Poset &p)
    : WidthAntichainEnumerator(
          StateModel::build(p, minimum_chain_partition(p))) {}

std::optional<std::vector<ElementIndex>> WidthAntichainEnumerator::next() {
  auto cut = downsets_->next();
  if (!cut)
    return std::nullopt;
  std::vector<ElementIndex> states;
  states.reserve(cut->size());
  for (std::size_t i = 0; i < cut->size(); ++i)
    states.push_back(sm_.state(static_cast<int>(i + 1), (*cut)[i]));
  return states;
}

std::vector<std::string> cut_events(const EventModel &m, const CutVector &cut) {
  std::vector<ElementIndex> members;
  for (int i = 1; i <= m.processes(); ++i)
    for (std::size_t k = 0; k < cut.at(static_cast<std::size_t>(i - 1)); ++k)
      members.push_back(m.events_of(i)[k]);
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return ids_of(m.poset(), members);
}

CutVector cut_vector(const EventModel &m,
                     const std::vector<std::string> &events) {
  Bitset set(m.poset().size());
  for (const auto &id : events)
    set.set(m.poset().index_of(id));
  if (!m.is_consistent_cut(set))
    throw NotConsistent("event set is not downward closed");
  CutVector cut(static_cast<std::size_t>(m.processes()), 0);
  for (auto e = set.find_first(); e != Bitset::npos; e = set.find_next(e))
    for (const Slot &s : m.slots(e)) {
      auto &c = cut[static_cast<std::size_t>(s.proc - 1)];
      c = std::max(c, static_cast<std::size_t>(s.idx));
    }
  return cut;
}

std::vector<std::vector<std::string>> enumerate_event_cuts(const EventModel &m) {
  std::vector<std::vector<std::string>> out;
  DownsetEnumerator en(m);
  while (auto cut = en.next())
    out.push_back(cut_events(m, *cut));
  return out;
}

std::vector<std::vector<std::string>> enumerate_width_antichains(const Poset &p) {
  std::vector<std::vector<std::string>> out;
  WidthAntichainEnumerator en(p);
  while (auto states = en.next())
    out.push_back(ids_of(en.model().poset(), *states));
  return out;
}

std::vector<std::string> cut_to_antichain(const EventModel &m,
                                          const std::vector<std::string> &cut) {
  CutVector c = cut_vector(m, cut);
  std::vector<std::string> states;
  for (std::size_t i = 0; i < c.size(); ++i)
    states.push_back(std::to_string(i + 1) + "." + std::to_string(c[i]));
  return states;
}

std::vector<std::string>
antichain_to_cut(const EventModel &m, const std::vector<std::string> &states) {
  StateModel sm = es_transform(m);
  std::vector<ElementIndex> members;
  for (const auto &id : states) {
    auto s = sm.poset().find(id);
    if (!s)
      throw NotWidthAntichain("'" + id + "' is not a state of the model");
    members.push_back(*s);
  }
  std::vector<char> seen(static_cast<std::size_t>(sm.chains()), 0);
  for (ElementIndex s : members) {
    auto &flag = seen[static_cast<std::size_t>(sm.chain_of(s) - 1)];
    if (flag)
      throw NotWidthAntichain("two states on chain " +
                              std::to_string(sm.chain_of(s)));
    flag = 1;
  }
  if (members.size() != static_cast<std::size_t>(sm.chains()) ||
      !sm.poset().is_antichain(members))
    throw NotWidthAntichain("state set is not a width-antichain");
  std::vector<ElementIndex> events;
  for (ElementIndex s : members) {
    int i = sm.chain_of(s);
    for (std::size_t k = 0; k < sm.position_of(s); ++k)
      events.push_back(m.events_of(i)[k]);
  }
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());
  return ids_of(m.poset(), events);
}

MeetJoin lattice_meet_join(const StateModel &sm,
                           std::span<const ElementIndex> a,
                           std::span<const ElementIndex> b) {
  const std::size_t n = static_cast<std::size_t>(sm.chains());
  if (width(sm.poset()).width != n)
    throw NotWidthAntichain("chain count differs from the width");
  auto per_chain = [&](std::span<const ElementIndex> set) {
    std::vector<std::optional<std::size_t>> pos(n);
    for (ElementIndex s : set) {
      auto &slot = pos.at(static_cast<std::size_t>(sm.chain_of(s) - 1));
      if (slot)
        throw NotWidthAntichain("two states on one chain");
      slot = sm.position_of(s);
    }
    if (set.size() != n || !sm.poset().is_antichain(set))
      throw NotWidthAntichain("state set is not a width-antichain");
    return pos;
  };
  auto pa = per_chain(a);
  auto pb = per_chain(b);
  MeetJoin r;
  for (std::size_t i = 0; i < n; ++i) {
    const int chain = static_cast<int>(i + 1);
    r.meet.push_back(sm.state(chain, std::min(*pa[i], *pb[i])));
    r.join.push_back(sm.state(chain, std::max(*pa[i], *pb[i])));
  }
  return r;
}

CutLattice materialize_cut_lattice(const EventModel &m, std::size_t max_cuts) {
  CutLattice lattice;
  DownsetEnumerator en(m);
  while (auto cut = en.next()) {
    if (lattice.cuts.size() >= max_cuts)
      throw CountExceeded("lattice has more than " + std::to_string(max_cuts) +
                          " cuts");
    lattice.index.emplace(*cut, lattice.cuts.size());
    lattice.cuts.push_back(std::move(*cut));
  }
  lattice.successors.assign(lattice.cuts.size(), {});
  for (std::size_t k = 0; k < lattice.cuts.size(); ++k) {
    const CutVector &cut = lattice.cuts[k];
    for (int i = 1; i <= m.processes(); ++i) {
      std::size_t have = cut[static_cast<std::size_t>(i - 1)];
      if (have >= m.length(i))
        continue;
      ElementIndex e = m.event_at(i, static_cast<int>(have + 1));
      if (m.slots(e).front().proc != i)
        continue;
      CutVector up = cut;
      for (const Slot &s : m.slots(e))
        up[static_cast<std::size_t>(s.proc - 1)] =
            static_cast<std::size_t>(s.idx);
      auto it = lattice.index.find(up);
      if (it != lattice.index.end())
        lattice.successors[k].push_back(it->second);
    }
  }
  return lattice;
}

} // namespace pomodel
