#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pclingam/discovery.hpp"
#include "pclingam/graph.hpp"

namespace pclingam {

/// Edge-mark confusion counts; rows are true marks, columns estimated marks,
/// both in EdgeMark order (absent, undirected, forward, backward).
struct ConfusionMatrix {
  Eigen::Matrix<std::int64_t, 4, 4> counts = Eigen::Matrix<std::int64_t, 4, 4>::Zero();

  std::int64_t total() const { return counts.sum(); }
  std::int64_t correct() const { return counts.trace(); }
  /// correct / total, or 1 for an empty matrix.
  double diagonal_fraction() const;
  std::int64_t at(EdgeMark truth, EdgeMark estimate) const {
    return counts(static_cast<int>(truth), static_cast<int>(estimate));
  }

  ConfusionMatrix& operator+=(const ConfusionMatrix& other) {
    counts += other.counts;
    return *this;
  }
  friend bool operator==(const ConfusionMatrix& a, const ConfusionMatrix& b) { return a.counts == b.counts; }
};

/// Marks of all pairs (i, j), i < j, in lexicographic order.
std::vector<EdgeMark> edge_marks(const MixedGraph& pattern);

ConfusionMatrix confusion_matrix(const NgPattern& truth, const NgPattern& estimate);

enum class Step1 { Oracle, Pc };

struct ExperimentConfig {
  int runs = 20;
  int nodes = 6;
  Eigen::Index samples = 1000;
  Step1 step1 = Step1::Oracle;
  DiscoveryConfig discovery;
  std::uint64_t seed = 1;
  /// Unset means default_edge_prob(nodes).
  std::optional<double> edge_prob;
  double ng_prob = 0.5;
};

struct RunRecord {
  int run = 0;
  std::uint64_t model_seed = 0;
  std::uint64_t data_seed = 0;
  NgPattern truth;
  std::optional<DiscoveryReport> report;
  /// Empty unless the run failed and was excluded from the matrix.
  std::string failure;
  ConfusionMatrix matrix;
};

struct ExperimentResult {
  ConfusionMatrix matrix;
  std::vector<RunRecord> runs;
  int failed_runs = 0;
  std::size_t repaired_edges = 0;
};

/// Seeds for run `run` of an experiment seeded with `seed`: {model, data}.
std::pair<std::uint64_t, std::uint64_t> run_seeds(std::uint64_t seed, int run);

ExperimentResult run_experiment(const ExperimentConfig& config);

/// Table layout with "*", "—", "→", "←" headers.
std::string format_confusion_table(const ConfusionMatrix& m);

}  // namespace pclingam
