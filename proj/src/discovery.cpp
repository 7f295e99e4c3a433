#include "pclingam/discovery.hpp"

#include <string>

#include "pclingam/errors.hpp"
#include "pclingam/pattern.hpp"

namespace pclingam {

void DiscoveryConfig::validate() const {
  if (!(ci_alpha > 0.0 && ci_alpha < 1.0)) throw InvalidArgument("ci_alpha must lie in (0, 1)");
  if (!(ng_alpha > 0.0 && ng_alpha < 1.0)) throw InvalidArgument("ng_alpha must lie in (0, 1)");
  if (max_class_size == 0) throw InvalidArgument("max_class_size must be positive");
}

Selection select_best_dag(const Dataset& data, const MixedGraph& pattern, const DiscoveryConfig& config,
                          bool allow_new_colliders) {
  if (pattern.size() != data.variables()) {
    throw InvalidArgument("pattern and dataset disagree on the variable count");
  }
  auto dags = enumerate_dags(pattern, {config.max_class_size, allow_new_colliders});
  if (dags.empty()) throw InconsistentOrientation("pattern admits no consistent DAG");

  Selection sel{dags.front(), 0, {}};
  sel.scores.reserve(dags.size());
  for (std::size_t k = 0; k < dags.size(); ++k) {
    const double u = nongaussianity_score(ols_residuals(data, dags[k]));
    sel.scores.push_back({std::move(dags[k]), u});
    if (u > sel.scores[sel.best_index].score) sel.best_index = k;
  }
  sel.best = sel.scores[sel.best_index].dag;
  return sel;
}

std::vector<double> normality_p_values(const Dataset& residuals) {
  std::vector<double> p;
  for (int i = 0; i < residuals.variables(); ++i) {
    Eigen::VectorXd row = residuals.variable(i).transpose();
    p.push_back(anderson_darling(row).p_value);
  }
  return p;
}

std::vector<bool> ng_vector(const std::vector<double>& p_values, double ng_alpha) {
  std::vector<bool> ng;
  for (double p : p_values) ng.push_back(p < ng_alpha);
  return ng;
}

std::vector<bool> ng_vector(const Dataset& residuals, double ng_alpha) {
  return ng_vector(normality_p_values(residuals), ng_alpha);
}

DiscoveryReport pclingam(const Dataset& data, const DiscoveryConfig& config,
                         const std::optional<MixedGraph>& oracle_pattern) {
  config.validate();
  PcResult step1;
  if (oracle_pattern) {
    if (oracle_pattern->size() != data.variables()) {
      throw InvalidArgument("oracle pattern has " + std::to_string(oracle_pattern->size()) +
                            " nodes but the data has " + std::to_string(data.variables()) + " variables");
    }
    step1.pattern = *oracle_pattern;
  } else {
    step1 = pc_search(data, config);
  }

  Selection sel = select_best_dag(data, step1.pattern, config, step1.relaxed_colliders);
  const Dataset residuals = ols_residuals(data, sel.best);
  auto p_values = normality_p_values(residuals);
  auto ng = ng_vector(p_values, config.ng_alpha);

  DiscoveryReport report{ngdag_pattern(NgDag(sel.best, ng)),
                         sel.best,
                         std::move(sel.scores),
                         std::move(p_values),
                         config,
                         std::move(step1.pattern),
                         step1.repaired_edges,
                         step1.relaxed_colliders};
  return report;
}

}  // namespace pclingam
