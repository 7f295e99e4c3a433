#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "pclingam/discovery.hpp"
#include "pclingam/errors.hpp"
#include "pclingam/pattern.hpp"

namespace pclingam {

namespace {

// Calls `visit` on each size-k subset of `pool` in lexicographic order until it returns true.
template <class Visit>
bool for_each_subset(const std::vector<Node>& pool, std::size_t k, Visit&& visit) {
  if (k > pool.size()) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t t = 0; t < k; ++t) idx[t] = t;
  std::vector<Node> subset(k);
  while (true) {
    for (std::size_t t = 0; t < k; ++t) subset[t] = pool[idx[t]];
    if (visit(subset)) return true;
    std::size_t t = k;
    while (t > 0 && idx[t - 1] == pool.size() - k + t - 1) --t;
    if (t == 0) return false;
    ++idx[t - 1];
    for (std::size_t u = t; u < k; ++u) idx[u] = idx[u - 1] + 1;
  }
}

std::optional<MixedGraph> close_if_valid(const MixedGraph& g) {
  try {
    MixedGraph closed = meek_closure(g);
    if (is_chain_graph(closed) && has_consistent_extension(closed)) return closed;
  } catch (const InconsistentOrientation&) {
  }
  return std::nullopt;
}

}  // namespace

PcResult repair_pattern(const MixedGraph& oriented) {
  if (auto closed = close_if_valid(oriented)) return {*closed, 0, false};

  const auto directed = oriented.directed_edges();
  for (auto [a, b] : directed) {
    MixedGraph g = oriented;
    g.unorient(a, b);
    if (auto closed = close_if_valid(g)) return {*closed, 1, false};
  }
  MixedGraph g = oriented;
  std::size_t dropped = 0;
  for (auto [a, b] : directed) {
    g.unorient(a, b);
    ++dropped;
    if (auto closed = close_if_valid(g)) return {*closed, dropped, false};
  }
  // Only reachable when the skeleton has a chordless cycle.
  return {oriented.skeleton(), directed.size(), true};
}

PcResult pc_search(const Dataset& data, const DiscoveryConfig& config) {
  config.validate();
  const int n = data.variables();
  if (data.samples() <= n + 3) {
    throw InsufficientData("PC needs more than n + 3 samples");
  }
  const CiTester tester(data);
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, true));
  for (int v = 0; v < n; ++v) adj[v][v] = false;
  std::map<Edge, std::vector<Node>> sepsets;

  const std::size_t max_depth = config.max_cond_size.value_or(n >= 2 ? static_cast<std::size_t>(n - 2) : 0);
  for (std::size_t depth = 0;; ++depth) {
    // Adjacencies are frozen per level so the result does not depend on pair order.
    std::vector<std::vector<Node>> frozen(n);
    for (Node v = 0; v < n; ++v)
      for (Node u = 0; u < n; ++u)
        if (adj[v][u]) frozen[v].push_back(u);

    bool testable = false;
    for (Node i = 0; i < n; ++i) {
      for (Node j = i + 1; j < n; ++j) {
        if (!adj[i][j]) continue;
        for (auto [a, b] : {Edge{i, j}, Edge{j, i}}) {
          std::vector<Node> pool;
          for (Node u : frozen[a])
            if (u != b) pool.push_back(u);
          if (pool.size() < depth) continue;
          testable = true;
          const bool removed = for_each_subset(pool, depth, [&](const std::vector<Node>& cond) {
            if (!tester.test(i, j, cond, config.ci_alpha).independent) return false;
            sepsets[{i, j}] = cond;
            return true;
          });
          if (removed) {
            adj[i][j] = adj[j][i] = false;
            break;
          }
        }
      }
    }
    if (!testable || depth >= max_depth) break;
  }

  MixedGraph skeleton(n);
  for (Node i = 0; i < n; ++i)
    for (Node j = i + 1; j < n; ++j)
      if (adj[i][j]) skeleton.add_undirected(i, j);

  // Collect collider claims first so that conflicting claims can be detected.
  std::set<Edge> claims;
  for (const auto& [pair, sepset] : sepsets) {
    auto [i, k] = pair;
    for (Node j = 0; j < n; ++j) {
      if (!adj[i][j] || !adj[k][j]) continue;
      if (std::find(sepset.begin(), sepset.end(), j) != sepset.end()) continue;
      claims.insert({i, j});
      claims.insert({k, j});
    }
  }
  MixedGraph oriented = skeleton;
  for (auto [from, to] : claims) {
    if (!claims.contains({to, from})) oriented.orient(from, to);
  }
  return repair_pattern(oriented);
}

MixedGraph pc_pattern(const Dataset& data, const DiscoveryConfig& config) {
  return pc_search(data, config).pattern;
}

}  // namespace pclingam
