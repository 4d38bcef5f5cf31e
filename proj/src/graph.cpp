#include "detail/graph.hpp"

#include <algorithm>

namespace pomodel::detail {

std::vector<std::vector<std::size_t>>
strongly_connected_components(const Adjacency &adj) {
  const std::size_t n = adj.size();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> number(n, kNone), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;

  struct Frame {
    std::size_t v;
    std::size_t next;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (number[root] != kNone)
      continue;
    std::vector<Frame> calls{{root, 0}};
    number[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!calls.empty()) {
      Frame &f = calls.back();
      if (f.next < adj[f.v].size()) {
        std::size_t w = adj[f.v][f.next++];
        if (number[w] == kNone) {
          number[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          calls.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], number[w]);
        }
        continue;
      }
      std::size_t v = f.v;
      calls.pop_back();
      if (!calls.empty())
        low[calls.back().v] = std::min(low[calls.back().v], low[v]);
      if (low[v] == number[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
      }
    }
  }
  return components;
}

std::vector<char> reachable_from(const Adjacency &adj,
                                 const std::vector<std::size_t> &sources) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<std::size_t> todo;
  for (std::size_t s : sources)
    if (!seen[s]) {
      seen[s] = 1;
      todo.push_back(s);
    }
  while (!todo.empty()) {
    std::size_t v = todo.back();
    todo.pop_back();
    for (std::size_t w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        todo.push_back(w);
      }
  }
  return seen;
}

Adjacency reversed(const Adjacency &adj) {
  Adjacency rev(adj.size());
  for (std::size_t v = 0; v < adj.size(); ++v)
    for (std::size_t w : adj[v])
      rev[w].push_back(v);
  return rev;
}

} // namespace pomodel::detail
