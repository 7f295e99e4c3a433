#pragma once

#include <cstddef>
#include <vector>

#include "pclingam/graph.hpp"

namespace pclingam {

/// Applies Meek's rules R1-R4 until no undirected edge can be oriented.
/// Throws InconsistentOrientation if the directed part of the input is cyclic
/// or propagation creates a directed cycle or a new unshielded collider.
MixedGraph meek_closure(MixedGraph graph);

/// Completed pattern of the d-separation-equivalence class of `dag`.
MixedGraph cpdag_from_dag(const Dag& dag);

/// True iff the graph has no semi-directed cycle.
bool is_chain_graph(const MixedGraph& graph);

/// Maximal sets of nodes connected by undirected edges, each sorted, ordered by smallest member.
std::vector<std::vector<Node>> chain_components(const MixedGraph& graph);

struct EnumerationOptions {
  std::size_t max_class_size = 10'000;
  /// Accept orientations that introduce unshielded colliders. Used only for
  /// repairing finite-sample patterns that have no collider-free extension.
  bool allow_new_colliders = false;
};

/// All DAGs that keep every directed edge of `graph` and orient its undirected
/// edges acyclically without adding unshielded colliders. For a completed
/// pattern this is exactly its d-separation-equivalence class. Order is
/// lexicographic over the undirected edges (sorted), "lo -> hi" before "hi -> lo".
std::vector<Dag> enumerate_dags(const MixedGraph& graph, const EnumerationOptions& options = {});

bool has_consistent_extension(const MixedGraph& graph, bool allow_new_colliders = false);

/// Pattern of the distribution-equivalence class of an ngDAG.
NgPattern ngdag_pattern(const NgDag& ngdag);

/// Throws InvalidArgument when node counts differ.
bool distribution_equivalent(const NgDag& d1, const NgDag& d2);

}  // namespace pclingam
