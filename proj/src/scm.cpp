#include "pclingam/scm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Dense>

#include "pclingam/errors.hpp"
#include "pclingam/pattern.hpp"

namespace pclingam {

Dataset::Dataset(std::vector<std::string> names, Eigen::MatrixXd values)
    : names_(std::move(names)), values_(std::move(values)) {
  if (names_.size() != static_cast<std::size_t>(values_.rows())) {
    throw InvalidArgument("dataset has " + std::to_string(values_.rows()) + " variables but " +
                          std::to_string(names_.size()) + " names");
  }
  if (values_.cols() < 1) throw InvalidArgument("dataset needs at least one sample");
  if (!values_.allFinite()) throw InvalidArgument("dataset contains non-finite values");
}

std::vector<std::string> default_names(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("X" + std::to_string(i + 1));
  return names;
}

namespace {

constexpr std::array<std::string_view, 7> kFamilyNames = {
    "Gaussian", "SignedSquareGaussian", "CubedGaussian", "StudentT2", "BimodalMoG", "LogNormal", "Uniform"};

}  // namespace

std::string_view family_name(Family family) { return kFamilyNames[static_cast<std::size_t>(family)]; }

Family family_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kFamilyNames.size(); ++i)
    if (kFamilyNames[i] == name) return static_cast<Family>(i);
  throw InputError("unknown disturbance family '" + std::string(name) + "'");
}

Eigen::VectorXd draw_disturbances(const DisturbanceSpec& spec, Eigen::Index count,
                                  std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd e(count);
  const double e_const = std::numbers::e;
  switch (spec.family) {
    case Family::Gaussian:
      for (auto& v : e) v = normal(rng);
      break;
    case Family::SignedSquareGaussian:
      // E g^4 = 3
      for (auto& v : e) {
        double g = normal(rng);
        v = g * std::abs(g) / std::sqrt(3.0);
      }
      break;
    case Family::CubedGaussian:
      // E g^6 = 15
      for (auto& v : e) {
        double g = normal(rng);
        v = g * g * g / std::sqrt(15.0);
      }
      break;
    case Family::StudentT2: {
      std::student_t_distribution<double> t(2.0);
      for (auto& v : e) v = t(rng) * kStudentT2Scale;
      break;
    }
    case Family::BimodalMoG: {
      std::bernoulli_distribution coin(0.5);
      for (auto& v : e) {
        double centre = coin(rng) ? 2.0 : -2.0;
        v = (centre + normal(rng)) / std::sqrt(5.0);
      }
      break;
    }
    case Family::LogNormal: {
      const double mean = std::exp(0.5);
      const double sd = std::sqrt((e_const - 1.0) * e_const);
      for (auto& v : e) v = (std::exp(normal(rng)) - mean) / sd;
      break;
    }
    case Family::Uniform: {
      std::uniform_real_distribution<double> u(-std::sqrt(3.0), std::sqrt(3.0));
      for (auto& v : e) v = u(rng);
      break;
    }
  }
  return e * std::sqrt(spec.variance);
}

ScmModel::ScmModel(std::vector<Node> order, Eigen::MatrixXd b, Eigen::VectorXd c,
                   std::vector<DisturbanceSpec> disturbances)
    : order_(std::move(order)), b_(std::move(b)), c_(std::move(c)), disturbances_(std::move(disturbances)) {
  const auto n = static_cast<Eigen::Index>(order_.size());
  if (b_.rows() != n || b_.cols() != n || c_.size() != n ||
      disturbances_.size() != order_.size()) {
    throw InvalidArgument("model components disagree on the node count");
  }
  std::vector<int> position(n, -1);
  for (Eigen::Index k = 0; k < n; ++k) {
    Node v = order_[k];
    if (v < 0 || v >= n || position[v] != -1) throw InvalidArgument("order is not a permutation");
    position[v] = static_cast<int>(k);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (b_(i, j) != 0.0 && position[j] >= position[i]) {
        throw InvalidArgument("coefficient b(" + std::to_string(i) + ", " + std::to_string(j) +
                              ") violates the causal order");
      }
    }
  }
  if (!b_.allFinite() || !c_.allFinite()) throw InvalidArgument("non-finite model parameters");
  for (const auto& d : disturbances_) {
    if (!(d.variance > 0.0) || !std::isfinite(d.variance)) {
      throw InvalidArgument("disturbance variances must be positive");
    }
  }
}

Dag ScmModel::dag() const {
  std::vector<Edge> edges;
  for (Eigen::Index i = 0; i < b_.rows(); ++i)
    for (Eigen::Index j = 0; j < b_.cols(); ++j)
      if (b_(i, j) != 0.0) edges.emplace_back(static_cast<Node>(j), static_cast<Node>(i));
  return Dag(size(), edges);
}

std::vector<bool> ScmModel::ng() const {
  std::vector<bool> flags;
  for (const auto& d : disturbances_) flags.push_back(d.non_gaussian());
  return flags;
}

Eigen::VectorXd ScmModel::disturbance_variances() const {
  Eigen::VectorXd v(size());
  for (int i = 0; i < size(); ++i) v(i) = disturbances_[i].variance;
  return v;
}

Eigen::MatrixXd ScmModel::implied_covariance() const {
  Eigen::MatrixXd a = reduced_form(*this);
  return a * disturbance_variances().asDiagonal() * a.transpose();
}

Eigen::MatrixXd reduced_form(const ScmModel& model) {
  const int n = model.size();
  // Permute into the causal order, where I - B is unit lower triangular.
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(n);
  for (int k = 0; k < n; ++k) perm.indices()(k) = model.order()[k];
  Eigen::MatrixXd ordered = perm.transpose() * model.b() * perm;
  Eigen::MatrixXd i_minus_b = Eigen::MatrixXd::Identity(n, n) - ordered;
  Eigen::MatrixXd a = i_minus_b.triangularView<Eigen::UnitLower>().solve(Eigen::MatrixXd::Identity(n, n));
  return perm * a * perm.transpose();
}

Dataset sample(const ScmModel& model, Eigen::Index n_samples, std::uint64_t seed,
               std::vector<std::string> names) {
  if (n_samples < 1) throw InvalidArgument("sample count must be positive");
  const int n = model.size();
  if (names.empty()) names = default_names(n);
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd e(n, n_samples);
  for (int i = 0; i < n; ++i) e.row(i) = draw_disturbances(model.disturbances()[i], n_samples, rng).transpose();

  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n_samples);
  for (Node v : model.order()) {
    x.row(v) = model.b().row(v) * x;
    x.row(v) += e.row(v);
    x.row(v).array() += model.c()(v);
  }
  return Dataset(std::move(names), std::move(x));
}

namespace {

// Population regression of each node on `parents[i]` under covariance `sigma`.
void regress_on_covariance(const Eigen::MatrixXd& sigma, const std::vector<std::vector<int>>& parents,
                           Eigen::MatrixXd& b, Eigen::VectorXd& residual_var) {
  const auto k = sigma.rows();
  b = Eigen::MatrixXd::Zero(k, k);
  residual_var.resize(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto& pa = parents[i];
    if (pa.empty()) {
      residual_var(i) = sigma(i, i);
      continue;
    }
    Eigen::MatrixXd s_pp = sigma(pa, pa);
    Eigen::VectorXd s_pi = sigma(pa, i);
    Eigen::VectorXd beta = s_pp.ldlt().solve(s_pi);
    for (std::size_t t = 0; t < pa.size(); ++t) b(i, pa[t]) = beta(t);
    residual_var(i) = sigma(i, i) - s_pi.dot(beta);
  }
}

}  // namespace

ScmModel match_parametrization(const ScmModel& m1, const NgDag& target) {
  const NgDag source = m1.ngdag();
  if (target.dag.size() != m1.size()) throw NotEquivalent("node counts differ");
  if (!distribution_equivalent(source, target)) {
    throw NotEquivalent("target ngDAG is not distribution-equivalent to the model");
  }
  if (source.dag == target.dag) return m1;

  const int n = m1.size();
  Eigen::MatrixXd b2 = m1.b();
  Eigen::VectorXd c2 = m1.c();
  std::vector<DisturbanceSpec> dist2 = m1.disturbances();

  const MixedGraph pattern = ngdag_pattern(target).graph;
  for (const auto& comp : chain_components(pattern)) {
    if (comp.size() < 2) continue;
    const auto k = static_cast<Eigen::Index>(comp.size());
    bool same = true;
    for (Node u : comp)
      for (Node v : comp)
        if (source.dag.has_edge(u, v) != target.dag.has_edge(u, v)) same = false;
    if (same) continue;

    std::vector<int> outside_parents;
    for (Node p = 0; p < n; ++p) {
      if (std::binary_search(comp.begin(), comp.end(), p)) continue;
      for (Node v : comp) {
        if (source.dag.has_edge(p, v)) {
          outside_parents.push_back(p);
          break;
        }
      }
    }

    const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(k, k);
    Eigen::MatrixXd b1cc = m1.b()(comp, comp);
    Eigen::VectorXd sd1(k);
    for (Eigen::Index i = 0; i < k; ++i) sd1(i) = std::sqrt(m1.disturbances()[comp[i]].variance);
    Eigen::MatrixXd a1 = (identity - b1cc).inverse() * sd1.asDiagonal();

    // Any A2 of the target's in-component structure with A2 A2^T = A1 A1^T.
    std::vector<std::vector<int>> local_parents(k);
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j)
        if (target.dag.has_edge(comp[j], comp[i])) local_parents[i].push_back(static_cast<int>(j));
    Eigen::MatrixXd b2cc;
    Eigen::VectorXd var2;
    regress_on_covariance(a1 * a1.transpose(), local_parents, b2cc, var2);
    Eigen::VectorXd sd2 = var2.cwiseSqrt();
    Eigen::MatrixXd a2 = (identity - b2cc).inverse() * sd2.asDiagonal();
    Eigen::MatrixXd transfer = a2.partialPivLu().solve(a1);  // A2^{-1} A1

    Eigen::MatrixXd w1 = sd1.cwiseInverse().asDiagonal() * m1.b()(comp, outside_parents);
    Eigen::MatrixXd w2 = transfer * w1;
    Eigen::MatrixXd weights2 = sd2.asDiagonal() * w2;
    Eigen::VectorXd c_comp = m1.c()(comp);
    Eigen::VectorXd c2_comp = sd2.asDiagonal() * (transfer * (sd1.cwiseInverse().asDiagonal() * c_comp));

    for (Eigen::Index i = 0; i < k; ++i) {
      const Node v = comp[i];
      b2.row(v).setZero();
      for (Eigen::Index j = 0; j < k; ++j) b2(v, comp[j]) = b2cc(i, j);
      for (std::size_t t = 0; t < outside_parents.size(); ++t) {
        const Node p = outside_parents[t];
        const double w = weights2(i, static_cast<Eigen::Index>(t));
        if (target.dag.has_edge(p, v)) {
          b2(v, p) = w;
        } else if (std::abs(w) > 1e-9 * (1.0 + weights2.cwiseAbs().maxCoeff())) {
          throw ContractViolation("parent of a chain component is not adjacent to all of its members");
        }
      }
      c2(v) = c2_comp(i);
      dist2[v] = DisturbanceSpec{Family::Gaussian, var2(i)};
    }
  }
  return ScmModel(target.dag.topological_order(), std::move(b2), std::move(c2), std::move(dist2));
}

double default_edge_prob(int n) { return n <= 1 ? 0.0 : std::min(1.0, 2.0 / (n - 1)); }

ScmModel random_model(int n, double edge_prob, double ng_prob, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("node count must be positive");
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0) || !(ng_prob >= 0.0 && ng_prob <= 1.0)) {
    throw InvalidArgument("probabilities must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> magnitude(0.5, 1.5);
  std::uniform_real_distribution<double> variance(1.0, 3.0);
  std::uniform_int_distribution<std::size_t> pick(0, kNonGaussianFamilies.size() - 1);

  std::vector<Node> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  for (int later = 1; later < n; ++later) {
    for (int earlier = 0; earlier < later; ++earlier) {
      if (unit(rng) >= edge_prob) continue;
      const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
      b(order[later], order[earlier]) = sign * magnitude(rng);
    }
  }
  std::vector<DisturbanceSpec> disturbances(n);
  for (auto& d : disturbances) {
    d.family = unit(rng) < ng_prob ? kNonGaussianFamilies[pick(rng)] : Family::Gaussian;
    d.variance = variance(rng);
  }
  return ScmModel(std::move(order), std::move(b), Eigen::VectorXd::Zero(n), std::move(disturbances));
}

ScmModel chain_example_model() {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(3, 3);
  b(1, 0) = 3.0;
  b(2, 1) = -2.0;
  return ScmModel({0, 1, 2}, b, Eigen::VectorXd::Zero(3),
                  {{Family::Gaussian, 1.0}, {Family::Gaussian, 1.0}, {Family::Uniform, 1.0}});
}

}  // namespace pclingam
