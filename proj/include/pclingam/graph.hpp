#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace pclingam {

using Node = int;
/// Ordered node pair; (from, to) for directed edges, (lo, hi) for undirected ones.
using Edge = std::pair<Node, Node>;

/// Directed acyclic graph over nodes 0..n-1.
class Dag {
 public:
  explicit Dag(int node_count = 0);
  /// Throws InvalidArgument on self-loops, duplicates, bad indices or cycles.
  Dag(int node_count, std::span<const Edge> edges);

  int size() const { return n_; }
  bool has_edge(Node from, Node to) const { return adj_[index(from, to)] != 0; }
  bool adjacent(Node a, Node b) const { return has_edge(a, b) || has_edge(b, a); }

  std::vector<Node> parents(Node v) const;
  std::vector<Node> children(Node v) const;
  /// Lexicographically sorted (from, to) pairs.
  std::vector<Edge> edges() const;
  std::size_t edge_count() const;
  /// Deterministic: smallest available node first.
  std::vector<Node> topological_order() const;

  friend bool operator==(const Dag&, const Dag&) = default;

 private:
  std::size_t index(Node a, Node b) const { return static_cast<std::size_t>(a) * n_ + b; }

  int n_;
  std::vector<std::uint8_t> adj_;
};

/// Graph whose adjacencies are either directed or undirected.
class MixedGraph {
 public:
  explicit MixedGraph(int node_count = 0);
  MixedGraph(int node_count, std::span<const Edge> directed, std::span<const Edge> undirected);
  static MixedGraph from_dag(const Dag& dag);

  int size() const { return n_; }
  bool adjacent(Node a, Node b) const { return mark(a, b) != kNone; }
  /// a -> b
  bool has_directed(Node a, Node b) const { return mark(a, b) == kOut; }
  bool has_undirected(Node a, Node b) const { return mark(a, b) == kUndirected; }

  void add_directed(Node from, Node to);
  void add_undirected(Node a, Node b);
  void remove_edge(Node a, Node b);
  /// Turns a - b (or an existing b -> a) into a -> b. The pair must be adjacent.
  void orient(Node from, Node to);
  void unorient(Node a, Node b);

  std::vector<Node> adjacents(Node v) const;
  std::vector<Node> parents(Node v) const;
  std::vector<Node> children(Node v) const;
  std::vector<Node> neighbors(Node v) const;

  std::vector<Edge> directed_edges() const;
  /// Pairs with first < second.
  std::vector<Edge> undirected_edges() const;
  MixedGraph skeleton() const;

  friend bool operator==(const MixedGraph&, const MixedGraph&) = default;

 private:
  enum : std::uint8_t { kNone = 0, kUndirected = 1, kOut = 2, kIn = 3 };

  std::uint8_t mark(Node a, Node b) const { return marks_[static_cast<std::size_t>(a) * n_ + b]; }
  void set(Node a, Node b, std::uint8_t m);
  void check(Node a, Node b) const;

  int n_;
  std::vector<std::uint8_t> marks_;
};

/// DAG plus a per-node flag marking non-Gaussian disturbances.
struct NgDag {
  NgDag(Dag g, std::vector<bool> flags);

  Dag dag;
  std::vector<bool> ng;

  friend bool operator==(const NgDag&, const NgDag&) = default;
};

struct NgPattern {
  MixedGraph graph;
  std::vector<bool> ng;

  friend bool operator==(const NgPattern&, const NgPattern&) = default;
};

/// Mark of the canonical pair (i, j), i < j.
enum class EdgeMark : std::uint8_t { Absent = 0, Undirected = 1, Forward = 2, Backward = 3 };

EdgeMark edge_mark(const MixedGraph& g, Node i, Node j);

/// Reachability-based d-separation test of x and y given `cond`.
bool d_separated(const Dag& dag, Node x, Node y, std::span<const Node> cond);

/// Triples (a, b, c) with a -> b <- c, a < c, a and c nonadjacent.
std::vector<std::array<Node, 3>> unshielded_colliders(const Dag& dag);

}  // namespace pclingam
