#include "pclingam/bench.hpp"

#include <iomanip>
#include <random>
#include <sstream>

#include "pclingam/errors.hpp"
#include "pclingam/pattern.hpp"
#include "pclingam/scm.hpp"

namespace pclingam {

double ConfusionMatrix::diagonal_fraction() const {
  const auto t = total();
  return t == 0 ? 1.0 : static_cast<double>(correct()) / static_cast<double>(t);
}

std::vector<EdgeMark> edge_marks(const MixedGraph& pattern) {
  std::vector<EdgeMark> marks;
  const int n = pattern.size();
  for (Node i = 0; i < n; ++i)
    for (Node j = i + 1; j < n; ++j) marks.push_back(edge_mark(pattern, i, j));
  return marks;
}

ConfusionMatrix confusion_matrix(const NgPattern& truth, const NgPattern& estimate) {
  if (truth.graph.size() != estimate.graph.size()) {
    throw InvalidArgument("patterns have different node counts");
  }
  const auto t = edge_marks(truth.graph);
  const auto e = edge_marks(estimate.graph);
  ConfusionMatrix m;
  for (std::size_t k = 0; k < t.size(); ++k) ++m.counts(static_cast<int>(t[k]), static_cast<int>(e[k]));
  return m;
}

std::pair<std::uint64_t, std::uint64_t> run_seeds(std::uint64_t seed, int run) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(run)};
  std::array<std::uint32_t, 4> words{};
  seq.generate(words.begin(), words.end());
  return {(std::uint64_t{words[0]} << 32) | words[1], (std::uint64_t{words[2]} << 32) | words[3]};
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.runs < 0 || config.nodes < 1 || config.samples < 1) {
    throw InvalidArgument("experiment parameters must be positive");
  }
  config.discovery.validate();
  const double edge_prob = config.edge_prob.value_or(default_edge_prob(config.nodes));

  ExperimentResult result;
  for (int run = 0; run < config.runs; ++run) {
    RunRecord record;
    record.run = run;
    std::tie(record.model_seed, record.data_seed) = run_seeds(config.seed, run);

    const ScmModel model = random_model(config.nodes, edge_prob, config.ng_prob, record.model_seed);
    const NgDag truth_dag = model.ngdag();
    record.truth = ngdag_pattern(truth_dag);
    const Dataset data = sample(model, config.samples, record.data_seed);

    std::optional<MixedGraph> oracle;
    if (config.step1 == Step1::Oracle) oracle = cpdag_from_dag(truth_dag.dag);
    try {
      record.report = pclingam(data, config.discovery, oracle);
      record.matrix = confusion_matrix(record.truth, record.report->pattern);
      result.matrix += record.matrix;
      result.repaired_edges += record.report->repaired_edges;
    } catch (const Error& e) {
      record.failure = e.what();
      ++result.failed_runs;
    }
    result.runs.push_back(std::move(record));
  }
  return result;
}

std::string format_confusion_table(const ConfusionMatrix& m) {
  static constexpr const char* kLabels[4] = {"*", "—", "→", "←"};
  std::ostringstream os;
  os << ' ';
  for (const char* label : kLabels) os << "      " << label;
  os << '\n';
  for (int r = 0; r < 4; ++r) {
    os << kLabels[r];
    for (int c = 0; c < 4; ++c) os << std::setw(7) << m.counts(r, c);
    os << '\n';
  }
  return os.str();
}

}  // namespace pclingam
