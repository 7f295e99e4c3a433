#include <algorithm>
#include <string>

#include "pclingam/errors.hpp"
#include "pclingam/pattern.hpp"

namespace pclingam {

namespace {

bool directed_part_acyclic(const MixedGraph& g) {
  const int n = g.size();
  std::vector<int> indegree(n, 0);
  for (auto [a, b] : g.directed_edges()) ++indegree[b];
  std::vector<Node> ready;
  for (Node v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push_back(v);
  int seen = 0;
  while (!ready.empty()) {
    Node v = ready.back();
    ready.pop_back();
    ++seen;
    for (Node c : g.children(v))
      if (--indegree[c] == 0) ready.push_back(c);
  }
  return seen == n;
}

// R1: a -> b - c, a and c nonadjacent  =>  b -> c
bool rule1(const MixedGraph& g, Node b, Node c) {
  for (Node a : g.parents(b))
    if (!g.adjacent(a, c)) return true;
  return false;
}

// R2: b -> a -> c with b - c  =>  b -> c
bool rule2(const MixedGraph& g, Node b, Node c) {
  for (Node a : g.children(b))
    if (g.has_directed(a, c)) return true;
  return false;
}

// R3: b - x, b - y, x -> c <- y, b - c, x and y nonadjacent  =>  b -> c
bool rule3(const MixedGraph& g, Node b, Node c) {
  std::vector<Node> mids;
  for (Node x : g.neighbors(b))
    if (g.has_directed(x, c)) mids.push_back(x);
  for (std::size_t i = 0; i < mids.size(); ++i)
    for (std::size_t j = i + 1; j < mids.size(); ++j)
      if (!g.adjacent(mids[i], mids[j])) return true;
  return false;
}

// R4: d -> x -> c, b - d, b adjacent to x, b - c, d and c nonadjacent  =>  b -> c
bool rule4(const MixedGraph& g, Node b, Node c) {
  for (Node x : g.parents(c)) {
    if (!g.adjacent(b, x)) continue;
    for (Node d : g.parents(x))
      if (d != c && g.has_undirected(b, d) && !g.adjacent(d, c)) return true;
  }
  return false;
}

}  // namespace

MixedGraph meek_closure(MixedGraph g) {
  if (!directed_part_acyclic(g)) {
    throw InconsistentOrientation("directed edges of the input already form a cycle");
  }
  std::vector<Edge> derived;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [lo, hi] : g.undirected_edges()) {
      for (auto [b, c] : {Edge{lo, hi}, Edge{hi, lo}}) {
        if (!g.has_undirected(b, c)) continue;
        if (rule1(g, b, c) || rule2(g, b, c) || rule3(g, b, c) || rule4(g, b, c)) {
          g.orient(b, c);
          derived.emplace_back(b, c);
          changed = true;
        }
      }
    }
  }

  if (!directed_part_acyclic(g)) {
    throw InconsistentOrientation("orientation propagation produced a directed cycle");
  }
  for (auto [from, to] : derived) {
    for (Node other : g.parents(to)) {
      if (other != from && !g.adjacent(other, from)) {
        throw InconsistentOrientation("orientation propagation created the unshielded collider " +
                                      std::to_string(from) + " -> " + std::to_string(to) +
                                      " <- " + std::to_string(other));
      }
    }
  }
  return g;
}

MixedGraph cpdag_from_dag(const Dag& dag) {
  MixedGraph g(dag.size());
  for (auto [a, b] : dag.edges()) g.add_undirected(std::min(a, b), std::max(a, b));
  for (const auto& [a, b, c] : unshielded_colliders(dag)) {
    g.orient(a, b);
    g.orient(c, b);
  }
  return meek_closure(std::move(g));
}

bool is_chain_graph(const MixedGraph& g) {
  const int n = g.size();
  for (auto [u, v] : g.directed_edges()) {
    // Can u be reached from v along edges that never point backwards?
    std::vector<bool> seen(n, false);
    std::vector<Node> stack{v};
    while (!stack.empty()) {
      Node w = stack.back();
      stack.pop_back();
      if (w == u) return false;
      if (seen[w]) continue;
      seen[w] = true;
      for (Node x : g.children(w)) stack.push_back(x);
      for (Node x : g.neighbors(w)) stack.push_back(x);
    }
  }
  return true;
}

std::vector<std::vector<Node>> chain_components(const MixedGraph& g) {
  const int n = g.size();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<Node>> out;
  for (Node s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<Node> comp;
    std::vector<Node> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      Node w = stack.back();
      stack.pop_back();
      comp.push_back(w);
      for (Node x : g.neighbors(w)) {
        if (!seen[x]) {
          seen[x] = true;
          stack.push_back(x);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace pclingam
