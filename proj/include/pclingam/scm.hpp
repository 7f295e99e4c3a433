#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "pclingam/dataset.hpp"
#include "pclingam/graph.hpp"

namespace pclingam {

enum class Family {
  Gaussian,
  SignedSquareGaussian,  // g * |g|
  CubedGaussian,         // g^3
  StudentT2,             // Student's t, 2 degrees of freedom
  BimodalMoG,            // 0.5 N(-2, 1) + 0.5 N(2, 1)
  LogNormal,             // exp(g)
  Uniform,
};

inline constexpr std::array<Family, 6> kNonGaussianFamilies = {
    Family::SignedSquareGaussian, Family::CubedGaussian, Family::StudentT2,
    Family::BimodalMoG,           Family::LogNormal,     Family::Uniform};

std::string_view family_name(Family family);
/// Throws InputError for unknown names.
Family family_from_name(std::string_view name);

/// Multiplier taking a standard t(2) draw to a variable whose interquartile
/// range equals that of N(0, 1). The t(2) variance is infinite, so for this
/// family the target variance only fixes the scale nominally.
inline constexpr double kStudentT2Scale = 0.6744897501960817 * 1.2247448713915890;

struct DisturbanceSpec {
  Family family = Family::Gaussian;
  /// Variance after standardization (nominal for StudentT2).
  double variance = 1.0;

  bool non_gaussian() const { return family != Family::Gaussian; }
  friend bool operator==(const DisturbanceSpec&, const DisturbanceSpec&) = default;
};

/// `count` independent zero-mean draws scaled to `spec.variance`.
Eigen::VectorXd draw_disturbances(const DisturbanceSpec& spec, Eigen::Index count,
                                  std::mt19937_64& rng);

/// Linear acyclic model x = B x + e + c, with b(i, j) the weight of x_j in the
/// equation for x_i.
class ScmModel {
 public:
  /// `order` lists nodes from first to last in the causal order. Throws
  /// InvalidArgument if B has support outside that order or a variance is not positive.
  ScmModel(std::vector<Node> order, Eigen::MatrixXd b, Eigen::VectorXd c,
           std::vector<DisturbanceSpec> disturbances);

  int size() const { return static_cast<int>(order_.size()); }
  const std::vector<Node>& order() const { return order_; }
  const Eigen::MatrixXd& b() const { return b_; }
  const Eigen::VectorXd& c() const { return c_; }
  const std::vector<DisturbanceSpec>& disturbances() const { return disturbances_; }

  Dag dag() const;
  std::vector<bool> ng() const;
  NgDag ngdag() const { return NgDag(dag(), ng()); }
  Eigen::VectorXd disturbance_variances() const;
  /// A diag(var) A^T.
  Eigen::MatrixXd implied_covariance() const;

 private:
  std::vector<Node> order_;
  Eigen::MatrixXd b_;
  Eigen::VectorXd c_;
  std::vector<DisturbanceSpec> disturbances_;
};

/// (I - B)^{-1}; lower triangular under the model's causal order, unit diagonal.
Eigen::MatrixXd reduced_form(const ScmModel& model);

/// Draws `n_samples` observations. Deterministic in `seed`.
Dataset sample(const ScmModel& model, Eigen::Index n_samples, std::uint64_t seed,
               std::vector<std::string> names = {});

/// An instantiation of `target` that implies the same observed distribution as
/// `m1`. Chain components whose orientation differs are reparametrized from
/// their reduced forms: A2 A2^T = A1 A1^T, parent weights w2 = A2^{-1} A1 w1.
/// Throws NotEquivalent if the two ngDAGs are not distribution-equivalent.
ScmModel match_parametrization(const ScmModel& m1, const NgDag& target);

/// Expected edge count equal to n.
double default_edge_prob(int n);

/// Random causal order; each forward pair is an edge with probability
/// `edge_prob`, |b| ~ U[0.5, 1.5] with random sign; each node non-Gaussian with
/// probability `ng_prob` (family uniform over the non-Gaussian ones); variances U[1, 3].
ScmModel random_model(int n, double edge_prob, double ng_prob, std::uint64_t seed);

/// x := e_x, y := 3x + e_y, z := -2y + e_z with Gaussian e_x, e_y, uniform e_z, unit variances.
ScmModel chain_example_model();

}  // namespace pclingam
