#include <functional>

#include "pclingam/errors.hpp"
#include "pclingam/pattern.hpp"

namespace pclingam {

namespace {

class Orienter {
 public:
  Orienter(const MixedGraph& g, bool allow_new_colliders)
      : g_(g), n_(g.size()), allow_(allow_new_colliders), arc_(static_cast<std::size_t>(n_) * n_, 0) {
    for (auto [a, b] : g.directed_edges()) arc_[idx(a, b)] = 1;
    free_ = g.undirected_edges();
  }

  /// Visits each complete orientation in lexicographic order; stops when `emit` returns false.
  void run(const std::function<bool(const Dag&)>& emit) {
    stop_ = false;
    recurse(0, emit);
  }

 private:
  std::size_t idx(Node a, Node b) const { return static_cast<std::size_t>(a) * n_ + b; }

  bool reaches(Node from, Node target) const {
    std::vector<bool> seen(n_, false);
    std::vector<Node> stack{from};
    while (!stack.empty()) {
      Node w = stack.back();
      stack.pop_back();
      if (w == target) return true;
      if (seen[w]) continue;
      seen[w] = true;
      for (Node x = 0; x < n_; ++x)
        if (arc_[idx(w, x)]) stack.push_back(x);
    }
    return false;
  }

  bool admissible(Node from, Node to) const {
    if (reaches(to, from)) return false;
    if (allow_) return true;
    for (Node w = 0; w < n_; ++w) {
      if (w != from && arc_[idx(w, to)] && !g_.adjacent(w, from)) return false;
    }
    return true;
  }

  void recurse(std::size_t k, const std::function<bool(const Dag&)>& emit) {
    if (stop_) return;
    if (k == free_.size()) {
      std::vector<Edge> edges;
      for (Node a = 0; a < n_; ++a)
        for (Node b = 0; b < n_; ++b)
          if (arc_[idx(a, b)]) edges.emplace_back(a, b);
      if (!emit(Dag(n_, edges))) stop_ = true;
      return;
    }
    auto [lo, hi] = free_[k];
    for (auto [from, to] : {Edge{lo, hi}, Edge{hi, lo}}) {
      if (!admissible(from, to)) continue;
      arc_[idx(from, to)] = 1;
      recurse(k + 1, emit);
      arc_[idx(from, to)] = 0;
      if (stop_) return;
    }
  }

  const MixedGraph& g_;
  int n_;
  bool allow_;
  std::vector<std::uint8_t> arc_;
  std::vector<Edge> free_;
  bool stop_ = false;
};

bool has_directed_cycle(const MixedGraph& g) {
  std::vector<Edge> arcs = g.directed_edges();
  try {
    Dag check(g.size(), arcs);
  } catch (const InvalidArgument&) {
    return true;
  }
  return false;
}

}  // namespace

std::vector<Dag> enumerate_dags(const MixedGraph& graph, const EnumerationOptions& options) {
  if (has_directed_cycle(graph)) {
    throw InvalidArgument("pattern's directed edges contain a cycle");
  }
  std::vector<Dag> out;
  Orienter orienter(graph, options.allow_new_colliders);
  orienter.run([&](const Dag& dag) {
    if (out.size() == options.max_class_size) {
      throw ClassTooLarge(options.max_class_size, out.size() + 1);
    }
    out.push_back(dag);
    return true;
  });
  return out;
}

bool has_consistent_extension(const MixedGraph& graph, bool allow_new_colliders) {
  if (has_directed_cycle(graph)) return false;
  bool found = false;
  Orienter orienter(graph, allow_new_colliders);
  orienter.run([&](const Dag&) {
    found = true;
    return false;
  });
  return found;
}

}  // namespace pclingam
