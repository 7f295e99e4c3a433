#include "pclingam/errors.hpp"
#include "pclingam/pattern.hpp"

namespace pclingam {

NgPattern ngdag_pattern(const NgDag& ngdag) {
  MixedGraph g = cpdag_from_dag(ngdag.dag);
  for (auto [a, b] : g.undirected_edges()) {
    if (!ngdag.ng[a] && !ngdag.ng[b]) continue;
    if (ngdag.dag.has_edge(a, b)) {
      g.orient(a, b);
    } else {
      g.orient(b, a);
    }
  }
  return NgPattern{meek_closure(std::move(g)), ngdag.ng};
}

bool distribution_equivalent(const NgDag& d1, const NgDag& d2) {
  if (d1.dag.size() != d2.dag.size()) {
    throw InvalidArgument("ngDAGs have different node counts");
  }
  return ngdag_pattern(d1) == ngdag_pattern(d2);
}

}  // namespace pclingam
