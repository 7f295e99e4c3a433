#include "pclingam/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "pclingam/errors.hpp"

namespace pclingam {

namespace {

void check_index(int n, Node v) {
  if (v < 0 || v >= n) {
    throw InvalidArgument("node index " + std::to_string(v) + " out of range for " +
                          std::to_string(n) + " nodes");
  }
}

}  // namespace

Dag::Dag(int node_count) : n_(node_count), adj_(static_cast<std::size_t>(node_count) * node_count, 0) {
  if (node_count < 0) throw InvalidArgument("negative node count");
}

Dag::Dag(int node_count, std::span<const Edge> edges) : Dag(node_count) {
  for (auto [from, to] : edges) {
    check_index(n_, from);
    check_index(n_, to);
    if (from == to) throw InvalidArgument("self-loop on node " + std::to_string(from));
    if (adjacent(from, to)) {
      throw InvalidArgument("duplicate edge between " + std::to_string(from) + " and " +
                            std::to_string(to));
    }
    adj_[index(from, to)] = 1;
  }
  if (topological_order().size() != static_cast<std::size_t>(n_)) {
    throw InvalidArgument("graph contains a directed cycle");
  }
}

std::vector<Node> Dag::parents(Node v) const {
  std::vector<Node> out;
  for (Node u = 0; u < n_; ++u)
    if (has_edge(u, v)) out.push_back(u);
  return out;
}

std::vector<Node> Dag::children(Node v) const {
  std::vector<Node> out;
  for (Node u = 0; u < n_; ++u)
    if (has_edge(v, u)) out.push_back(u);
  return out;
}

std::vector<Edge> Dag::edges() const {
  std::vector<Edge> out;
  for (Node a = 0; a < n_; ++a)
    for (Node b = 0; b < n_; ++b)
      if (has_edge(a, b)) out.emplace_back(a, b);
  return out;
}

std::size_t Dag::edge_count() const {
  return static_cast<std::size_t>(std::count(adj_.begin(), adj_.end(), std::uint8_t{1}));
}

std::vector<Node> Dag::topological_order() const {
  std::vector<int> indegree(n_, 0);
  for (Node a = 0; a < n_; ++a)
    for (Node b = 0; b < n_; ++b)
      if (has_edge(a, b)) ++indegree[b];
  std::priority_queue<Node, std::vector<Node>, std::greater<>> ready;
  for (Node v = 0; v < n_; ++v)
    if (indegree[v] == 0) ready.push(v);
  std::vector<Node> order;
  order.reserve(n_);
  while (!ready.empty()) {
    Node v = ready.top();
    ready.pop();
    order.push_back(v);
    for (Node c = 0; c < n_; ++c) {
      if (has_edge(v, c) && --indegree[c] == 0) ready.push(c);
    }
  }
  return order;
}

MixedGraph::MixedGraph(int node_count)
    : n_(node_count), marks_(static_cast<std::size_t>(node_count) * node_count, kNone) {
  if (node_count < 0) throw InvalidArgument("negative node count");
}

MixedGraph::MixedGraph(int node_count, std::span<const Edge> directed, std::span<const Edge> undirected)
    : MixedGraph(node_count) {
  for (auto [a, b] : directed) add_directed(a, b);
  for (auto [a, b] : undirected) add_undirected(a, b);
}

MixedGraph MixedGraph::from_dag(const Dag& dag) {
  MixedGraph g(dag.size());
  for (auto [a, b] : dag.edges()) g.add_directed(a, b);
  return g;
}

void MixedGraph::check(Node a, Node b) const {
  check_index(n_, a);
  check_index(n_, b);
  if (a == b) throw InvalidArgument("self-loop on node " + std::to_string(a));
}

void MixedGraph::set(Node a, Node b, std::uint8_t m) {
  marks_[static_cast<std::size_t>(a) * n_ + b] = m;
  std::uint8_t reverse = m;
  if (m == kOut) reverse = kIn;
  if (m == kIn) reverse = kOut;
  marks_[static_cast<std::size_t>(b) * n_ + a] = reverse;
}

void MixedGraph::add_directed(Node from, Node to) {
  check(from, to);
  if (adjacent(from, to)) {
    throw InvalidArgument("nodes " + std::to_string(from) + " and " + std::to_string(to) +
                          " are already adjacent");
  }
  set(from, to, kOut);
}

void MixedGraph::add_undirected(Node a, Node b) {
  check(a, b);
  if (adjacent(a, b)) {
    throw InvalidArgument("nodes " + std::to_string(a) + " and " + std::to_string(b) +
                          " are already adjacent");
  }
  set(a, b, kUndirected);
}

void MixedGraph::remove_edge(Node a, Node b) {
  check(a, b);
  set(a, b, kNone);
}

void MixedGraph::orient(Node from, Node to) {
  check(from, to);
  if (!adjacent(from, to)) throw InvalidArgument("cannot orient a missing edge");
  set(from, to, kOut);
}

void MixedGraph::unorient(Node a, Node b) {
  check(a, b);
  if (!adjacent(a, b)) throw InvalidArgument("cannot unorient a missing edge");
  set(a, b, kUndirected);
}

std::vector<Node> MixedGraph::adjacents(Node v) const {
  std::vector<Node> out;
  for (Node u = 0; u < n_; ++u)
    if (u != v && adjacent(v, u)) out.push_back(u);
  return out;
}

std::vector<Node> MixedGraph::parents(Node v) const {
  std::vector<Node> out;
  for (Node u = 0; u < n_; ++u)
    if (u != v && has_directed(u, v)) out.push_back(u);
  return out;
}

std::vector<Node> MixedGraph::children(Node v) const {
  std::vector<Node> out;
  for (Node u = 0; u < n_; ++u)
    if (u != v && has_directed(v, u)) out.push_back(u);
  return out;
}

std::vector<Node> MixedGraph::neighbors(Node v) const {
  std::vector<Node> out;
  for (Node u = 0; u < n_; ++u)
    if (u != v && has_undirected(v, u)) out.push_back(u);
  return out;
}

std::vector<Edge> MixedGraph::directed_edges() const {
  std::vector<Edge> out;
  for (Node a = 0; a < n_; ++a)
    for (Node b = 0; b < n_; ++b)
      if (a != b && has_directed(a, b)) out.emplace_back(a, b);
  return out;
}

std::vector<Edge> MixedGraph::undirected_edges() const {
  std::vector<Edge> out;
  for (Node a = 0; a < n_; ++a)
    for (Node b = a + 1; b < n_; ++b)
      if (has_undirected(a, b)) out.emplace_back(a, b);
  return out;
}

MixedGraph MixedGraph::skeleton() const {
  MixedGraph g(n_);
  for (Node a = 0; a < n_; ++a)
    for (Node b = a + 1; b < n_; ++b)
      if (adjacent(a, b)) g.add_undirected(a, b);
  return g;
}

NgDag::NgDag(Dag g, std::vector<bool> flags) : dag(std::move(g)), ng(std::move(flags)) {
  if (ng.size() != static_cast<std::size_t>(dag.size())) {
    throw InvalidArgument("ng vector length " + std::to_string(ng.size()) + " does not match " +
                          std::to_string(dag.size()) + " nodes");
  }
}

EdgeMark edge_mark(const MixedGraph& g, Node i, Node j) {
  if (i > j) throw InvalidArgument("edge_mark expects the canonical pair i < j");
  if (g.has_undirected(i, j)) return EdgeMark::Undirected;
  if (g.has_directed(i, j)) return EdgeMark::Forward;
  if (g.has_directed(j, i)) return EdgeMark::Backward;
  return EdgeMark::Absent;
}

bool d_separated(const Dag& dag, Node x, Node y, std::span<const Node> cond) {
  const int n = dag.size();
  check_index(n, x);
  check_index(n, y);
  if (x == y) throw InvalidArgument("d_separated requires distinct endpoints");
  std::vector<bool> observed(n, false);
  for (Node z : cond) {
    check_index(n, z);
    if (z == x || z == y) throw InvalidArgument("endpoint appears in the conditioning set");
    observed[z] = true;
  }

  // Ancestors of the conditioning set, inclusive.
  std::vector<bool> anc(n, false);
  std::vector<Node> stack(cond.begin(), cond.end());
  while (!stack.empty()) {
    Node v = stack.back();
    stack.pop_back();
    if (anc[v]) continue;
    anc[v] = true;
    for (Node p : dag.parents(v)) stack.push_back(p);
  }

  // State: (node, arrived_from_child). Moving "up" means we came from a child.
  std::vector<std::array<bool, 2>> visited(n, {false, false});
  std::vector<std::pair<Node, bool>> frontier{{x, true}};
  while (!frontier.empty()) {
    auto [v, up] = frontier.back();
    frontier.pop_back();
    if (visited[v][up]) continue;
    visited[v][up] = true;
    if (v == y && !observed[v]) return false;
    if (up) {
      if (observed[v]) continue;
      for (Node p : dag.parents(v)) frontier.emplace_back(p, true);
      for (Node c : dag.children(v)) frontier.emplace_back(c, false);
    } else {
      if (!observed[v]) {
        for (Node c : dag.children(v)) frontier.emplace_back(c, false);
      }
      if (anc[v]) {
        for (Node p : dag.parents(v)) frontier.emplace_back(p, true);
      }
    }
  }
  return true;
}

std::vector<std::array<Node, 3>> unshielded_colliders(const Dag& dag) {
  std::vector<std::array<Node, 3>> out;
  const int n = dag.size();
  for (Node b = 0; b < n; ++b) {
    auto pa = dag.parents(b);
    for (std::size_t i = 0; i < pa.size(); ++i)
      for (std::size_t j = i + 1; j < pa.size(); ++j)
        if (!dag.adjacent(pa[i], pa[j])) out.push_back({pa[i], b, pa[j]});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pclingam
