#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pclingam/dataset.hpp"
#include "pclingam/graph.hpp"
#include "pclingam/stats.hpp"

namespace pclingam {

struct DiscoveryConfig {
  /// Significance level of the PC independence tests.
  double ci_alpha = 0.01;
  /// A residual is labelled non-Gaussian when its normality p-value is below this.
  double ng_alpha = 0.01;
  std::size_t max_class_size = 10'000;
  /// Largest conditioning set PC tries; unset means n - 2.
  std::optional<std::size_t> max_cond_size;

  /// Throws InvalidArgument when a field is out of range.
  void validate() const;
};

/// Outcome of the constraint-based search.
struct PcResult {
  MixedGraph pattern;
  /// Orientations dropped to make the pattern admit a consistent DAG.
  std::size_t repaired_edges = 0;
  /// Set when even the skeleton had no collider-free extension, so the
  /// enumeration downstream has to tolerate new unshielded colliders.
  bool relaxed_colliders = false;
};

/// PC-stable: skeleton search with growing conditioning sets drawn from
/// current adjacencies, collider orientation from recorded separating sets,
/// then Meek propagation. Conflicting collider claims leave the edge undirected.
PcResult pc_search(const Dataset& data, const DiscoveryConfig& config);
MixedGraph pc_pattern(const Dataset& data, const DiscoveryConfig& config);

/// Makes a (skeleton + orientations) graph usable as an equivalence-class
/// description, dropping orientations until it is a closed chain graph with a
/// consistent extension.
PcResult repair_pattern(const MixedGraph& oriented);

struct ScoredDag {
  Dag dag;
  double score;
};

struct Selection {
  Dag best;
  std::size_t best_index = 0;
  std::vector<ScoredDag> scores;
};

/// Scores every DAG of the class with U on its standardized OLS residuals and
/// keeps the maximum; ties go to the earliest DAG in enumeration order.
Selection select_best_dag(const Dataset& data, const MixedGraph& pattern, const DiscoveryConfig& config,
                          bool allow_new_colliders = false);

/// Anderson-Darling p-value of each residual.
std::vector<double> normality_p_values(const Dataset& residuals);
std::vector<bool> ng_vector(const std::vector<double>& p_values, double ng_alpha);
std::vector<bool> ng_vector(const Dataset& residuals, double ng_alpha);

struct DiscoveryReport {
  NgPattern pattern;
  Dag best_dag;
  std::vector<ScoredDag> dag_scores;
  std::vector<double> residual_p_values;
  DiscoveryConfig config_used;
  /// The equivalence class that was searched (Step 1 output after repair).
  MixedGraph searched_pattern;
  std::size_t repaired_edges = 0;
  bool relaxed_colliders = false;
};

/// Full pipeline. With `oracle_pattern` the constraint-based step is skipped
/// and that pattern is searched instead.
DiscoveryReport pclingam(const Dataset& data, const DiscoveryConfig& config = {},
                         const std::optional<MixedGraph>& oracle_pattern = std::nullopt);

}  // namespace pclingam
