#include <pomodel/error.hpp>
#include <pomodel/state_model.hpp>

#include <algorithm>
#include <string>

namespace pomodel {

StateModel StateModel::build(Poset poset, ChainPartition chains,
                             std::map<std::string, AttrMap> attrs) {
  validate_chain_partition(poset, chains);
  for (const auto &[id, _] : attrs)
    poset.index_of(id);
  StateModel sm;
  sm.chain_of_.assign(poset.size(), 0);
  sm.position_of_.assign(poset.size(), 0);
  for (std::size_t c = 0; c < chains.chains.size(); ++c) {
    for (std::size_t k = 0; k < chains.chains[c].size(); ++k) {
      sm.chain_of_[chains.chains[c][k]] = static_cast<int>(c + 1);
      sm.position_of_[chains.chains[c][k]] = k;
    }
  }
  sm.poset_ = std::move(poset);
  sm.chains_ = std::move(chains);
  sm.attrs_ = std::move(attrs);
  return sm;
}

const AttrMap *StateModel::attrs(ElementIndex s) const {
  auto it = attrs_.find(poset_.id(s));
  return it == attrs_.end() ? nullptr : &it->second;
}

namespace {

std::string state_label(const StateModel &sm, ElementIndex s) {
  return "[" + std::to_string(sm.chain_of(s)) + "," +
         std::to_string(sm.position_of(s)) + "]";
}

Verdict endpoints_concurrent(const StateModel &sm, bool initial) {
  const Poset &p = sm.poset();
  for (int i = 1; i <= sm.chains(); ++i) {
    for (int j = i + 1; j <= sm.chains(); ++j) {
      ElementIndex a = sm.state(i, initial ? 0 : sm.final_index(i));
      ElementIndex b = sm.state(j, initial ? 0 : sm.final_index(j));
      if (p.comparable(a, b))
        return {false,
                {p.id(a), p.id(b)},
                state_label(sm, a) + " and " + state_label(sm, b) +
                    " are ordered"};
    }
  }
  return {};
}

Bitset chain_mask(const StateModel &sm, int chain) {
  Bitset mask(sm.poset().size());
  for (ElementIndex s : sm.partition().chains[static_cast<std::size_t>(chain - 1)])
    mask.set(s);
  return mask;
}

} // namespace

Verdict check_omega1(const StateModel &sm) {
  return endpoints_concurrent(sm, true);
}

Verdict check_omega2(const StateModel &sm) {
  return endpoints_concurrent(sm, false);
}

Verdict check_omega3(const StateModel &sm) {
  const Poset &p = sm.poset();
  for (int j = 1; j <= sm.chains(); ++j) {
    Bitset off_chain = ~chain_mask(sm, j);
    for (std::size_t t = 1; t <= sm.final_index(j); ++t) {
      ElementIndex jt = sm.state(j, t);
      ElementIndex jt_prev = sm.state(j, t - 1);
      Bitset lower = p.below(jt) & off_chain;      // candidates [i,s]
      Bitset upper = p.above(jt_prev) & off_chain; // candidates [k,u]
      for (auto x = lower.find_first(); x != Bitset::npos;
           x = lower.find_next(x)) {
        Bitset missing = upper - p.above(x);
        auto y = missing.find_first();
        if (y != Bitset::npos) {
          return {false,
                  {p.id(x), p.id(jt), p.id(jt_prev), p.id(y)},
                  state_label(sm, x) + " < " + state_label(sm, jt) + " and " +
                      state_label(sm, jt_prev) + " < " + state_label(sm, y) +
                      " but not " + state_label(sm, x) + " < " +
                      state_label(sm, y)};
        }
      }
    }
  }
  return {};
}

Verdict check_psi(const StateModel &sm) {
  const Poset &p = sm.poset();
  for (int i = 1; i <= sm.chains(); ++i) {
    for (std::size_t s = 1; s <= sm.final_index(i); ++s) {
      ElementIndex is_prev = sm.state(i, s - 1);
      ElementIndex is = sm.state(i, s);
      for (int j = 1; j <= sm.chains(); ++j) {
        if (j == i)
          continue;
        for (std::size_t t = 1; t <= sm.final_index(j); ++t) {
          ElementIndex jt = sm.state(j, t);
          ElementIndex jt_prev = sm.state(j, t - 1);
          if (p.less(is_prev, jt) && p.less(jt_prev, is)) {
            return {false,
                    {p.id(is_prev), p.id(jt), p.id(jt_prev), p.id(is)},
                    "i=" + std::to_string(i) + " s=" + std::to_string(s) +
                        " j=" + std::to_string(j) + " t=" + std::to_string(t) +
                        ": " + state_label(sm, is_prev) + " < " +
                        state_label(sm, jt) + " and " +
                        state_label(sm, jt_prev) + " < " +
                        state_label(sm, is)};
          }
        }
      }
    }
  }
  return {};
}

namespace {

struct IntervalTable {
  ChainPartition cp;
  std::vector<int> chain_of;
  std::vector<std::size_t> position_of;
  // intervals[s][c]
  std::vector<std::vector<ChainInterval>> intervals;
};

IntervalTable interval_table(const Poset &p) {
  IntervalTable t;
  t.cp = minimum_chain_partition(p);
  t.chain_of.assign(p.size(), -1);
  t.position_of.assign(p.size(), 0);
  for (std::size_t c = 0; c < t.cp.size(); ++c)
    for (std::size_t k = 0; k < t.cp.chains[c].size(); ++k) {
      t.chain_of[t.cp.chains[c][k]] = static_cast<int>(c);
      t.position_of[t.cp.chains[c][k]] = k;
    }
  t.intervals.assign(p.size(), {});
  for (ElementIndex s = 0; s < p.size(); ++s)
    for (std::size_t c = 0; c < t.cp.size(); ++c)
      t.intervals[s].push_back(incomparable_interval(p, t.cp, s, c));
  return t;
}

bool singleton_fails(const IntervalTable &t, ElementIndex s) {
  for (std::size_t c = 0; c < t.cp.size(); ++c)
    if (static_cast<int>(c) != t.chain_of[s] && t.intervals[s][c].empty())
      return true;
  return false;
}

bool pair_fails(const Poset &p, const IntervalTable &t, ElementIndex a,
                ElementIndex b) {
  if (p.comparable(a, b))
    return false;
  for (std::size_t c = 0; c < t.cp.size(); ++c) {
    if (static_cast<int>(c) == t.chain_of[a] ||
        static_cast<int>(c) == t.chain_of[b])
      continue;
    const ChainInterval &x = t.intervals[a][c];
    const ChainInterval &y = t.intervals[b][c];
    if (std::max(x.lo, y.lo) >= std::min(x.end, y.end))
      return true;
  }
  return false;
}

ElementIndex next_on_chain(const IntervalTable &t, ElementIndex s,
                           bool &exists) {
  const auto &chain = t.cp.chains[static_cast<std::size_t>(t.chain_of[s])];
  std::size_t k = t.position_of[s] + 1;
  exists = k < chain.size();
  return exists ? chain[k] : s;
}

} // namespace

Verdict check_width_extensible(const Poset &p) {
  if (p.empty())
    return {};
  IntervalTable t = interval_table(p);

  for (ElementIndex s = 0; s < p.size(); ++s) {
    if (!singleton_fails(t, s))
      continue;
    bool more = true;
    while (more) {
      ElementIndex up = next_on_chain(t, s, more);
      if (more && singleton_fails(t, up))
        s = up;
      else
        more = false;
    }
    return {false, {p.id(s)},
            "no width-antichain contains {" + p.id(s) + "}"};
  }

  for (ElementIndex a = 0; a < p.size(); ++a) {
    for (ElementIndex b = a + 1; b < p.size(); ++b) {
      if (!pair_fails(p, t, a, b))
        continue;
      bool changed = true;
      while (changed) {
        changed = false;
        bool exists = false;
        ElementIndex up = next_on_chain(t, a, exists);
        if (exists && pair_fails(p, t, up, b)) {
          a = up;
          changed = true;
        }
        up = next_on_chain(t, b, exists);
        if (exists && pair_fails(p, t, a, up)) {
          b = up;
          changed = true;
        }
      }
      std::vector<std::string> w{p.id(a), p.id(b)};
      std::sort(w.begin(), w.end());
      return {false, w,
              "no width-antichain contains {" + w[0] + "," + w[1] + "}"};
    }
  }
  return {};
}

namespace {

std::vector<Bitset> as_bitsets(const Poset &p,
                               const std::vector<std::vector<ElementIndex>> &sets) {
  std::vector<Bitset> out;
  out.reserve(sets.size());
  for (const auto &s : sets) {
    Bitset b(p.size());
    for (ElementIndex e : s)
      b.set(e);
    out.push_back(std::move(b));
  }
  return out;
}

std::string set_text(const std::vector<std::string> &ids) {
  std::string out = "{";
  for (std::size_t k = 0; k < ids.size(); ++k)
    out += (k ? "," : "") + ids[k];
  return out + "}";
}

} // namespace

Verdict check_width_extensible_by_definition(const Poset &p,
                                             std::size_t bound) {
  const std::size_t w = width(p).width;
  auto width_sets = as_bitsets(p, enumerate_antichains(p, w, bound));
  Verdict verdict;
  for_each_antichain(
      p, std::nullopt,
      [&](std::span<const ElementIndex> a) {
        Bitset set(p.size());
        for (ElementIndex e : a)
          set.set(e);
        for (const auto &wa : width_sets)
          if (set.is_subset_of(wa))
            return true;
        verdict.holds = false;
        verdict.witness = ids_of(p, a);
        verdict.detail =
            "no width-antichain contains " + set_text(verdict.witness);
        return false;
      },
      bound);
  return verdict;
}

bool antichain_leq(const Poset &p, std::span<const ElementIndex> a,
                   std::span<const ElementIndex> b) {
  return std::all_of(a.begin(), a.end(), [&](ElementIndex x) {
    return std::any_of(b.begin(), b.end(),
                       [&](ElementIndex y) { return p.less_equal(x, y); });
  });
}

Verdict check_interleaving_consistent_by_enumeration(const Poset &p,
                                                     std::size_t bound) {
  const std::size_t w = width(p).width;
  auto family = enumerate_antichains(p, w, bound);
  for (auto &a : family)
    std::sort(a.begin(), a.end());

  // The width-antichains form a lattice, so the biggest one is unique.
  std::optional<std::size_t> top;
  for (std::size_t k = 0; k < family.size(); ++k) {
    bool below_all_others = std::all_of(
        family.begin(), family.end(),
        [&](const auto &other) { return antichain_leq(p, other, family[k]); });
    if (below_all_others) {
      top = k;
      break;
    }
  }
  if (!top)
    throw InternalConsistencyError("width-antichain family has no top");

  auto overlap = [](const std::vector<ElementIndex> &x,
                    const std::vector<ElementIndex> &y) {
    std::vector<ElementIndex> both;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(),
                          std::back_inserter(both));
    return both.size();
  };

  for (std::size_t k = 0; k < family.size(); ++k) {
    if (k == *top)
      continue;
    bool advanced = false;
    for (std::size_t m = 0; m < family.size() && !advanced; ++m) {
      if (m == k)
        continue;
      advanced = overlap(family[k], family[m]) + 1 == w &&
                 antichain_leq(p, family[k], family[m]);
    }
    if (!advanced) {
      Verdict v{false, ids_of(p, family[k]), {}};
      v.detail = "width-antichain " + set_text(v.witness) +
                 " cannot advance on a single chain";
      return v;
    }
  }
  return {};
}

Verdict check_interleaving_consistent(const Poset &p, std::size_t bound) {
  if (check_width_extensible(p).holds) {
    StateModel sm = StateModel::build(p, minimum_chain_partition(p));
    Verdict v = check_psi(sm);
    if (!v.holds)
      v.detail = "psi fails (" + v.detail + ")";
    return v;
  }
  return check_interleaving_consistent_by_enumeration(p, bound);
}

const char *to_string(AntichainOrder o) {
  switch (o) {
  case AntichainOrder::Less:
    return "less";
  case AntichainOrder::Greater:
    return "greater";
  case AntichainOrder::Equal:
    return "equal";
  case AntichainOrder::Incomparable:
    return "incomparable";
  }
  return "?";
}

AntichainOrder compare_width_antichains(const Poset &p,
                                        std::span<const ElementIndex> a,
                                        std::span<const ElementIndex> b) {
  const std::size_t w = width(p).width;
  for (auto set : {a, b}) {
    std::vector<ElementIndex> sorted(set.begin(), set.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.size() != w ||
        std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
        !p.is_antichain(sorted))
      throw NotWidthAntichain(set_text(ids_of(p, set)) +
                              " is not a width-antichain (width " +
                              std::to_string(w) + ")");
  }
  std::vector<ElementIndex> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa == sb)
    return AntichainOrder::Equal;
  if (antichain_leq(p, sa, sb))
    return AntichainOrder::Less;
  if (antichain_leq(p, sb, sa))
    return AntichainOrder::Greater;
  return AntichainOrder::Incomparable;
}

std::optional<std::vector<ElementIndex>>
extend_to_width_antichain(const Poset &p, const ChainPartition &cp,
                          std::span<const ElementIndex> a) {
  std::vector<ElementIndex> result(a.begin(), a.end());
  if (!p.is_antichain(result))
    return std::nullopt;
  std::vector<bool> used(cp.size(), false);
  for (ElementIndex e : result)
    for (std::size_t c = 0; c < cp.size(); ++c)
      if (std::find(cp.chains[c].begin(), cp.chains[c].end(), e) !=
          cp.chains[c].end())
        used[c] = true;
  // Start each free chain at the lowest element concurrent with `a`, then
  // raise whichever pick lies below another until the picks are pairwise
  // concurrent. Raising only drops candidates that can never be used.
  std::vector<std::size_t> pick(cp.size(), 0), end(cp.size(), 0);
  for (std::size_t c = 0; c < cp.size(); ++c) {
    if (used[c])
      continue;
    end[c] = cp.chains[c].size();
    for (ElementIndex e : result) {
      ChainInterval iv = incomparable_interval(p, cp, e, c);
      pick[c] = std::max(pick[c], iv.lo);
      end[c] = std::min(end[c], iv.end);
    }
    if (pick[c] >= end[c])
      return std::nullopt;
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t c = 0; c < cp.size(); ++c) {
      if (used[c])
        continue;
      for (std::size_t d = 0; d < cp.size(); ++d) {
        if (used[d] || d == c)
          continue;
        while (p.less(cp.chains[c][pick[c]], cp.chains[d][pick[d]])) {
          changed = true;
          if (++pick[c] >= end[c])
            return std::nullopt;
        }
      }
    }
  }
  for (std::size_t c = 0; c < cp.size(); ++c)
    if (!used[c])
      result.push_back(cp.chains[c][pick[c]]);
  std::sort(result.begin(), result.end());
  return result;
}

PropertyReport check_properties(const StateModel &sm, PropertySelection which,
                                std::size_t bound) {
  PropertyReport r;
  if (which.omega1)
    r.omega1 = check_omega1(sm);
  if (which.omega2)
    r.omega2 = check_omega2(sm);
  if (which.omega3)
    r.omega3 = check_omega3(sm);
  if (which.psi)
    r.psi = check_psi(sm);
  if (which.we)
    r.width_extensible = check_width_extensible(sm.poset());
  if (which.ic)
    r.interleaving_consistent =
        check_interleaving_consistent(sm.poset(), bound);
  return r;
}

} // namespace pomodel
