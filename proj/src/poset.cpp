#include <pomodel/error.hpp>
#include <pomodel/poset.hpp>

#include "detail/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <string>

namespace pomodel {

const char *to_string(Relation r) {
  switch (r) {
  case Relation::Less:
    return "less";
  case Relation::Greater:
    return "greater";
  case Relation::Equal:
    return "equal-element";
  case Relation::Concurrent:
    return "concurrent";
  }
  return "?";
}

Poset Poset::build(
    std::vector<std::string> elements,
    std::span<const std::pair<std::string, std::string>> relations) {
  std::unordered_map<std::string, ElementIndex> index;
  for (ElementIndex i = 0; i < elements.size(); ++i) {
    if (!index.emplace(elements[i], i).second)
      throw DuplicateElement("element '" + elements[i] +
                             "' declared more than once");
  }
  std::vector<std::pair<ElementIndex, ElementIndex>> pairs;
  pairs.reserve(relations.size());
  for (const auto &[from, to] : relations) {
    auto f = index.find(from);
    if (f == index.end())
      throw UnknownElement("relation names undeclared element '" + from + "'");
    auto t = index.find(to);
    if (t == index.end())
      throw UnknownElement("relation names undeclared element '" + to + "'");
    pairs.emplace_back(f->second, t->second);
  }
  return from_indices(std::move(elements), pairs);
}

Poset Poset::from_indices(
    std::vector<std::string> elements,
    std::span<const std::pair<ElementIndex, ElementIndex>> relations) {
  Poset p;
  const std::size_t n = elements.size();
  p.ids_ = std::move(elements);
  for (ElementIndex i = 0; i < n; ++i) {
    if (!p.index_.emplace(p.ids_[i], i).second)
      throw DuplicateElement("element '" + p.ids_[i] +
                             "' declared more than once");
  }

  std::vector<std::vector<ElementIndex>> succ(n);
  std::vector<std::size_t> indegree(n, 0);
  for (const auto &[from, to] : relations) {
    if (from >= n || to >= n)
      throw UnknownElement("relation index out of range");
    if (from == to)
      throw CycleError("self-loop on '" + p.ids_[from] + "'");
    succ[from].push_back(to);
  }
  for (auto &s : succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (ElementIndex t : s)
      ++indegree[t];
  }

  // Kahn's algorithm; anything left over is on or behind a cycle.
  std::vector<ElementIndex> topo;
  topo.reserve(n);
  std::deque<ElementIndex> ready;
  for (ElementIndex i = 0; i < n; ++i)
    if (indegree[i] == 0)
      ready.push_back(i);
  while (!ready.empty()) {
    ElementIndex u = ready.front();
    ready.pop_front();
    topo.push_back(u);
    for (ElementIndex v : succ[u])
      if (--indegree[v] == 0)
        ready.push_back(v);
  }
  if (topo.size() != n) {
    std::string members;
    for (const auto &comp : detail::strongly_connected_components(succ)) {
      if (comp.size() < 2)
        continue;
      if (!members.empty())
        members += "}, {";
      for (std::size_t k = 0; k < comp.size(); ++k)
        members += (k ? ", " : "") + p.ids_[comp[k]];
    }
    throw CycleError("relation contains a cycle through {" + members + "}");
  }

  p.above_.assign(n, Bitset(n));
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    Bitset &row = p.above_[*it];
    for (ElementIndex v : succ[*it]) {
      row.set(v);
      row |= p.above_[v];
    }
  }
  p.below_.assign(n, Bitset(n));
  for (ElementIndex a = 0; a < n; ++a)
    for (auto b = p.above_[a].find_first(); b != Bitset::npos;
         b = p.above_[a].find_next(b))
      p.below_[b].set(a);

  for (ElementIndex a = 0; a < n; ++a) {
    for (auto b = p.above_[a].find_first(); b != Bitset::npos;
         b = p.above_[a].find_next(b)) {
      if (!p.above_[a].intersects(p.below_[b]))
        p.covers_.emplace_back(a, b);
    }
  }
  return p;
}

std::optional<ElementIndex> Poset::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

ElementIndex Poset::index_of(std::string_view id) const {
  auto found = find(id);
  if (!found)
    throw UnknownElement("unknown element '" + std::string(id) + "'");
  return *found;
}

Relation Poset::compare(ElementIndex a, ElementIndex b) const {
  if (a == b)
    return Relation::Equal;
  if (above_[a][b])
    return Relation::Less;
  if (above_[b][a])
    return Relation::Greater;
  return Relation::Concurrent;
}

std::size_t Poset::relation_size() const {
  std::size_t total = 0;
  for (const auto &row : above_)
    total += row.count();
  return total;
}

bool Poset::is_antichain(std::span<const ElementIndex> members) const {
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (comparable(members[i], members[j]))
        return false;
  return true;
}

Poset Poset::restrict_to(std::span<const ElementIndex> keep) const {
  std::vector<std::string> ids;
  ids.reserve(keep.size());
  for (ElementIndex e : keep)
    ids.push_back(ids_.at(e));
  std::vector<std::pair<ElementIndex, ElementIndex>> pairs;
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j)
      if (less(keep[i], keep[j]))
        pairs.emplace_back(i, j);
  return from_indices(std::move(ids), pairs);
}

bool operator==(const Poset &a, const Poset &b) {
  return a.ids_ == b.ids_ && a.above_ == b.above_;
}

void validate_chain_partition(const Poset &p, const ChainPartition &cp) {
  std::vector<bool> seen(p.size(), false);
  for (std::size_t c = 0; c < cp.chains.size(); ++c) {
    const auto &chain = cp.chains[c];
    if (chain.empty())
      throw InvalidChainPartition("chain " + std::to_string(c + 1) +
                                  " is empty");
    for (std::size_t k = 0; k < chain.size(); ++k) {
      ElementIndex e = chain[k];
      if (e >= p.size())
        throw InvalidChainPartition("chain element out of range");
      if (seen[e])
        throw InvalidChainPartition("element '" + p.id(e) +
                                    "' appears in more than one chain slot");
      seen[e] = true;
      if (k > 0 && !p.less(chain[k - 1], e))
        throw InvalidChainPartition("chain " + std::to_string(c + 1) +
                                    " is not increasing at '" + p.id(e) +
                                    "'");
    }
  }
  for (ElementIndex e = 0; e < p.size(); ++e)
    if (!seen[e])
      throw InvalidChainPartition("element '" + p.id(e) +
                                  "' is not covered by any chain");
}

namespace {

constexpr std::size_t kUnmatched = static_cast<std::size_t>(-1);

// Maximum matching on the split graph {x_left -> y_right : x < y}. A matched
// pair (x, y) means y follows x directly in a chain of the cover.
struct SplitMatching {
  std::vector<std::size_t> right_of; // left x -> matched right y
  std::vector<std::size_t> left_of;  // right y -> matched left x
  std::size_t size = 0;
};

SplitMatching max_split_matching(const Poset &p) {
  const std::size_t n = p.size();
  SplitMatching m{std::vector<std::size_t>(n, kUnmatched),
                  std::vector<std::size_t>(n, kUnmatched), 0};
  std::vector<std::size_t> visited_stamp(n, 0);
  std::size_t stamp = 0;

  // Iterative augmenting-path search (Kuhn) from one free left vertex.
  auto augment = [&](std::size_t root) {
    ++stamp;
    struct Frame {
      std::size_t left;
      std::size_t next_right;
    };
    std::vector<Frame> stack{{root, p.above(root).find_first()}};
    std::vector<std::size_t> path_right;
    while (!stack.empty()) {
      Frame &top = stack.back();
      std::size_t y = top.next_right;
      if (y == Bitset::npos) {
        stack.pop_back();
        if (!path_right.empty())
          path_right.pop_back();
        continue;
      }
      top.next_right = p.above(top.left).find_next(y);
      if (visited_stamp[y] == stamp)
        continue;
      visited_stamp[y] = stamp;
      path_right.push_back(y);
      if (m.left_of[y] == kUnmatched) {
        // Flip the path.
        for (std::size_t k = 0; k < stack.size(); ++k) {
          std::size_t x = stack[k].left;
          std::size_t yy = path_right[k];
          m.right_of[x] = yy;
          m.left_of[yy] = x;
        }
        return true;
      }
      std::size_t x2 = m.left_of[y];
      stack.push_back({x2, p.above(x2).find_first()});
    }
    return false;
  };

  // Greedy seed on cover edges, then augment.
  for (const auto &[x, y] : p.covers()) {
    if (m.right_of[x] == kUnmatched && m.left_of[y] == kUnmatched) {
      m.right_of[x] = y;
      m.left_of[y] = x;
      ++m.size;
    }
  }
  for (std::size_t x = 0; x < n; ++x)
    if (m.right_of[x] == kUnmatched && augment(x))
      ++m.size;
  return m;
}

} // namespace

WidthResult width(const Poset &p) {
  const std::size_t n = p.size();
  SplitMatching m = max_split_matching(p);

  // König: alternate from free left vertices; Z marks what is reached.
  std::vector<bool> z_left(n, false), z_right(n, false);
  std::deque<std::size_t> queue;
  for (std::size_t x = 0; x < n; ++x) {
    if (m.right_of[x] == kUnmatched) {
      z_left[x] = true;
      queue.push_back(x);
    }
  }
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (auto y = p.above(x).find_first(); y != Bitset::npos;
         y = p.above(x).find_next(y)) {
      if (z_right[y] || m.right_of[x] == y)
        continue;
      z_right[y] = true;
      std::size_t x2 = m.left_of[y];
      if (x2 != kUnmatched && !z_left[x2]) {
        z_left[x2] = true;
        queue.push_back(x2);
      }
    }
  }

  WidthResult result;
  result.width = n - m.size;
  for (std::size_t x = 0; x < n; ++x)
    if (z_left[x] && !z_right[x])
      result.antichain.push_back(x);
  if (result.antichain.size() != result.width || !p.is_antichain(result.antichain))
    throw InternalConsistencyError("König extraction disagrees with matching");
  return result;
}

ChainPartition minimum_chain_partition(const Poset &p) {
  SplitMatching m = max_split_matching(p);
  ChainPartition cp;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (m.left_of[x] != kUnmatched)
      continue;
    std::vector<ElementIndex> chain;
    for (std::size_t y = x; y != kUnmatched; y = m.right_of[y])
      chain.push_back(y);
    cp.chains.push_back(std::move(chain));
  }
  return cp;
}

ChainInterval incomparable_interval(const Poset &p, const ChainPartition &cp,
                                    ElementIndex s, std::size_t chain) {
  if (s >= p.size())
    throw UnknownElement("element index out of range");
  if (chain >= cp.chains.size())
    throw BadChainIndex("chain index " + std::to_string(chain) +
                        " out of range (" + std::to_string(cp.chains.size()) +
                        " chains)");
  const auto &c = cp.chains[chain];
  // Prefix below s, suffix above s; both are monotone along the chain.
  std::size_t lo = 0;
  while (lo < c.size() && p.less(c[lo], s))
    ++lo;
  std::size_t end = c.size();
  while (end > lo && p.less(s, c[end - 1]))
    --end;
  if (lo < end && std::find(c.begin() + lo, c.begin() + end, s) !=
                      c.begin() + end)
    return {0, 0};
  return {lo, end};
}

std::size_t default_oracle_bound() {
  static const std::size_t bound = [] {
    if (const char *env = std::getenv("POMODEL_ORACLE_BOUND")) {
      char *end = nullptr;
      unsigned long v = std::strtoul(env, &end, 10);
      if (end != env && *end == '\0' && v > 0)
        return static_cast<std::size_t>(v);
    }
    return std::size_t{20};
  }();
  return bound;
}

namespace {

void check_bound(const Poset &p, std::size_t bound) {
  if (p.size() > bound)
    throw OracleBoundExceeded("poset has " + std::to_string(p.size()) +
                              " elements; oracle bound is " +
                              std::to_string(bound));
}

} // namespace

void for_each_antichain(
    const Poset &p, std::optional<std::size_t> size_filter,
    const std::function<bool(std::span<const ElementIndex>)> &visit,
    std::size_t bound) {
  check_bound(p, bound);
  const std::size_t n = p.size();
  std::vector<ElementIndex> current;
  bool stopped = false;

  // Extend with larger indices only, so each antichain appears once.
  std::function<void(ElementIndex, const Bitset &)> extend =
      [&](ElementIndex start, const Bitset &compatible) {
        if (stopped)
          return;
        if (!size_filter || current.size() == *size_filter) {
          if (!visit(current)) {
            stopped = true;
            return;
          }
        }
        if (size_filter && current.size() >= *size_filter)
          return;
        for (ElementIndex e = start; e < n; ++e) {
          if (!compatible[e])
            continue;
          Bitset next = compatible;
          next &= ~p.above(e);
          next &= ~p.below(e);
          current.push_back(e);
          extend(e + 1, next);
          current.pop_back();
          if (stopped)
            return;
        }
      };
  Bitset all(n);
  all.set();
  extend(0, all);
}

std::vector<std::vector<ElementIndex>>
enumerate_antichains(const Poset &p, std::optional<std::size_t> size_filter,
                     std::size_t bound) {
  std::vector<std::vector<ElementIndex>> out;
  for_each_antichain(
      p, size_filter,
      [&](std::span<const ElementIndex> a) {
        out.emplace_back(a.begin(), a.end());
        return true;
      },
      bound);
  return out;
}

std::vector<std::vector<ElementIndex>>
enumerate_downsets_bruteforce(const Poset &p, std::size_t bound) {
  check_bound(p, std::min<std::size_t>(bound, 62));
  const std::size_t n = p.size();
  std::vector<std::uint64_t> below_mask(n, 0);
  for (ElementIndex e = 0; e < n; ++e)
    for (auto b = p.below(e).find_first(); b != Bitset::npos;
         b = p.below(e).find_next(b))
      below_mask[e] |= std::uint64_t{1} << b;

  std::vector<std::vector<ElementIndex>> out;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    bool closed = true;
    for (ElementIndex e = 0; e < n && closed; ++e)
      if ((mask >> e & 1) && (below_mask[e] & ~mask))
        closed = false;
    if (!closed)
      continue;
    std::vector<ElementIndex> set;
    for (ElementIndex e = 0; e < n; ++e)
      if (mask >> e & 1)
        set.push_back(e);
    out.push_back(std::move(set));
  }
  return out;
}

std::vector<std::string> ids_of(const Poset &p,
                                std::span<const ElementIndex> members) {
  std::vector<std::string> out;
  out.reserve(members.size());
  for (ElementIndex e : members)
    out.push_back(p.id(e));
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace pomodel
