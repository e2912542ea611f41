#pragma once

#include <cstdint>
#include <vector>

namespace admg {

namespace detail {

struct PairList {
  std::vector<Edge> pairs;
  explicit PairList(int n) {
    for (NodeId i = 1; i <= n; ++i)
      for (NodeId j = i + 1; j <= n; ++j) pairs.emplace_back(i, j);
  }
};

// Kahn's algorithm over child masks.
inline bool arrows_acyclic(int n, const std::vector<std::uint64_t>& child_mask) {
  std::vector<int> indegree(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v)
    for (std::uint64_t m = child_mask[v]; m; m &= m - 1) ++indegree[std::countr_zero(m)];
  std::vector<int> stack;
  for (int v = 0; v < n; ++v)
    if (indegree[v] == 0) stack.push_back(v);
  int seen = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++seen;
    for (std::uint64_t m = child_mask[v]; m; m &= m - 1) {
      int c = std::countr_zero(m);
      if (--indegree[c] == 0) stack.push_back(c);
    }
  }
  return seen == n;
}

}  // namespace detail

template <typename Fn>
void for_each_graph(int n, Dialect dialect, Fn&& fn) {
  const detail::PairList pl(n);
  const auto& pairs = pl.pairs;
  const std::size_t p = pairs.size();

  std::uint64_t arrow_configs = 1;
  for (std::size_t k = 0; k < p; ++k) arrow_configs *= 3;

  std::vector<int> state(p, 0);
  std::vector<std::uint64_t> child_mask(static_cast<std::size_t>(n));
  for (std::uint64_t code = 0; code < arrow_configs; ++code) {
    std::uint64_t c = code;
    std::fill(child_mask.begin(), child_mask.end(), 0);
    for (std::size_t k = 0; k < p; ++k) {
      state[k] = static_cast<int>(c % 3);
      c /= 3;
      auto [i, j] = pairs[k];
      if (state[k] == 1) child_mask[i - 1] |= std::uint64_t{1} << (j - 1);
      if (state[k] == 2) child_mask[j - 1] |= std::uint64_t{1} << (i - 1);
    }
    if (!detail::arrows_acyclic(n, child_mask)) continue;

    MixedGraph base(n);
    for (std::size_t k = 0; k < p; ++k) {
      auto [i, j] = pairs[k];
      if (state[k] == 1) base.add_arrow(i, j);
      if (state[k] == 2) base.add_arrow(j, i);
    }
    const std::uint64_t undirected_configs = std::uint64_t{1} << p;
    for (std::uint64_t mask = 0; mask < undirected_configs; ++mask) {
      MixedGraph g = base;
      for (std::size_t k = 0; k < p; ++k) {
        if (!(mask >> k & 1)) continue;
        auto [i, j] = pairs[k];
        if (dialect == Dialect::Alternative)
          g.add_line(i, j);
        else
          g.add_biarrow(i, j);
      }
      fn(static_cast<const MixedGraph&>(g));
    }
  }
}

}  // namespace admg
